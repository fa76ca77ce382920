#include "wcr/imaging.hpp"

#include <cmath>
#include <limits>

#include "wcr/errors.hpp"
#include "wcr/rng.hpp"

namespace wcr {

ImageGrid add_noise(const ImageGrid& img, double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0) || !(sigma < 1.0))
        throw ParameterError("add_noise: sigma must lie in (0,1)");

    SplitMix64 rng(seed);
    ImageGrid out = img;
    // Box-Muller, both outputs consumed; sequential by construction
    const double two_pi = 2.0 * std::acos(-1.0);
    double spare = 0.0;
    bool have_spare = false;
    for (double& s : out.samples) {
        double z;
        if (have_spare) {
            z = spare;
            have_spare = false;
        } else {
            const double u1 = 1.0 - rng.next_unit(); // (0,1]
            const double u2 = rng.next_unit();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            z = radius * std::cos(two_pi * u2);
            spare = radius * std::sin(two_pi * u2);
            have_spare = true;
        }
        s = std::clamp(s + sigma * z, 0.0, 1.0);
    }
    return out;
}

MetricsReport metrics(const ImageGrid& ref, const ImageGrid& test) {
    require_same_shape(ref, test, "metrics");
    ImageGrid diff(ref.width, ref.height);
    for (std::size_t i = 0; i < ref.size(); ++i)
        diff.samples[i] = ref.samples[i] - test.samples[i];

    MetricsReport rep;
    rep.residual_energy = det_squared_norm(diff);
    rep.mse = rep.residual_energy / static_cast<double>(ref.size());
    rep.psnr = rep.mse > 0.0 ? 10.0 * std::log10(1.0 / rep.mse)
                             : std::numeric_limits<double>::infinity();
    return rep;
}

ImageGrid make_phantom(int width, int height) {
    ImageGrid img(width, height, 0.2);

    auto block = [&](double r0, double r1, double c0, double c1, double value) {
        const int rb = static_cast<int>(r0 * height);
        const int re = static_cast<int>(r1 * height);
        const int cb = static_cast<int>(c0 * width);
        const int ce = static_cast<int>(c1 * width);
        for (int r = rb; r < re; ++r)
            for (int c = cb; c < ce; ++c) img.at(r, c) = value;
    };

    block(0.08, 0.42, 0.08, 0.35, 0.85);
    block(0.10, 0.30, 0.45, 0.90, 0.55);
    block(0.38, 0.62, 0.42, 0.70, 0.90);
    block(0.50, 0.68, 0.12, 0.32, 0.40);
    block(0.55, 0.70, 0.76, 0.94, 0.70);

    // smooth horizontal ramp band along the bottom
    const int ramp_start = static_cast<int>(0.78 * height);
    for (int r = ramp_start; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const double t = static_cast<double>(c) / std::max(1, width - 1);
            img.at(r, c) = 0.1 + 0.8 * t;
        }
    return img;
}

} // namespace wcr
