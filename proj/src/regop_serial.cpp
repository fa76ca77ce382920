#include "wcr/regop.hpp"

#include <string>

#include "wcr/errors.hpp"

// Plain-loop reference implementations of the regularizer kernels. They use
// the same accumulation order as the OpenMP versions, so outputs must match
// bit for bit; the tests and the benchmark rely on that.

namespace wcr::serial {

namespace {

inline int wrap(int i, int n) { return i < 0 ? i + n : (i >= n ? i - n : i); }

void require_fits(const Kernel& k, int width, int height, const char* op) {
    if (k.rows > height || k.cols > width)
        throw ShapeError(std::string(op) + ": kernel larger than image");
}

} // namespace

ImageGrid conv_forward(const ImageGrid& x, const Kernel& k) {
    require_fits(k, x.width, x.height, "serial::conv_forward");
    const int h = x.height;
    const int w = x.width;
    const int ci = k.rows / 2;
    const int cj = k.cols / 2;
    ImageGrid out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = 0; i < k.rows; ++i) {
                const int rr = wrap(r - (i - ci), h);
                for (int j = 0; j < k.cols; ++j) {
                    const int cc = wrap(c - (j - cj), w);
                    acc += k.at(i, j) * x.at(rr, cc);
                }
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

ImageGrid conv_adjoint(const ImageGrid& u, const Kernel& k) {
    require_fits(k, u.width, u.height, "serial::conv_adjoint");
    const int h = u.height;
    const int w = u.width;
    const int ci = k.rows / 2;
    const int cj = k.cols / 2;
    ImageGrid out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = 0; i < k.rows; ++i) {
                const int rr = wrap(r + (i - ci), h);
                for (int j = 0; j < k.cols; ++j) {
                    const int cc = wrap(c + (j - cj), w);
                    acc += k.at(i, j) * u.at(rr, cc);
                }
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

double reg_value(const ImageGrid& x, const RegularizerHandle& h) {
    if (x.width != h.width || x.height != h.height)
        throw ShapeError("serial::reg_value: image shape does not match regularizer");
    double total = 0.0;
    std::vector<double> row_sums(static_cast<std::size_t>(x.height));
    for (std::size_t k = 0; k < h.bank.size(); ++k) {
        const double mu = h.bank.weights[k];
        if (mu == 0.0) continue;
        const ImageGrid resp = serial::conv_forward(x, h.bank.kernels[k]);
        const PenaltySpec& pen = h.penalties[k];
        for (int r = 0; r < x.height; ++r) {
            double s = 0.0;
            for (int c = 0; c < x.width; ++c) s += penalty_value(resp.at(r, c), pen);
            row_sums[static_cast<std::size_t>(r)] = s;
        }
        double filter_sum = 0.0;
        for (int r = 0; r < x.height; ++r) filter_sum += row_sums[static_cast<std::size_t>(r)];
        total += mu * filter_sum;
    }
    return total;
}

ImageGrid reg_grad(const ImageGrid& x, const RegularizerHandle& h) {
    if (x.width != h.width || x.height != h.height)
        throw ShapeError("serial::reg_grad: image shape does not match regularizer");
    ImageGrid acc(x.width, x.height, 0.0);
    for (std::size_t k = 0; k < h.bank.size(); ++k) {
        const double mu = h.bank.weights[k];
        if (mu == 0.0) continue;
        ImageGrid resp = serial::conv_forward(x, h.bank.kernels[k]);
        const PenaltySpec& pen = h.penalties[k];
        for (double& s : resp.samples) s = penalty_deriv(s, pen);
        const ImageGrid back = serial::conv_adjoint(resp, h.bank.kernels[k]);
        for (std::size_t i = 0; i < acc.size(); ++i) acc.samples[i] += mu * back.samples[i];
    }
    return acc;
}

} // namespace wcr::serial
