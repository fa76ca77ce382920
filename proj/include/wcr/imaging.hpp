#pragma once

#include <cstdint>

#include "wcr/image.hpp"

namespace wcr {

// Adds i.i.d. Gaussian noise of standard deviation sigma and clamps to
// [0,1]. The stream is splitmix64 (see rng.hpp) mapped through Box-Muller,
// consumed in row-major order, so a given seed always yields the same image.
ImageGrid add_noise(const ImageGrid& img, double sigma, std::uint64_t seed);

struct MetricsReport {
    double mse = 0.0;
    double psnr = 0.0;            // dB, peak 1.0; +inf when mse == 0
    double residual_energy = 0.0; // ||ref - test||^2
};

MetricsReport metrics(const ImageGrid& ref, const ImageGrid& test);

// Synthetic piecewise-constant phantom with a smooth ramp band, values in
// [0.1, 0.9]. Stands in for real acquisitions in tests and demos.
ImageGrid make_phantom(int width, int height);

} // namespace wcr
