#pragma once

#include <string>
#include <vector>

#include "wcr/image.hpp"
#include "wcr/penalty.hpp"

namespace wcr {

/*
 * Convolutional ridge regularizer
 *
 *   g(x) = sum_k mu_k sum_i psi_k((W_k x)_i)
 *
 * with circular boundary conditions, so each W_k is a normal operator with
 * an exact adjoint and an analyzable spectrum. build_regularizer certifies
 * the weak-convexity budget rho_total = sum_k mu_k rho_k s_k < 1 by uniform
 * weight rescaling, where s_k >= ||W_k||_op^2 comes from power iteration.
 *
 * Kernels have odd side lengths and are addressed relative to their center
 * tap. The hot loops are OpenMP-parallel over rows with fixed accumulation
 * order (filter index, then row-major), so results are bit-identical
 * regardless of thread count; wcr::serial holds the plain-loop reference
 * implementations used by the tests and the benchmark.
 */

struct Kernel {
    int rows = 0;
    int cols = 0;
    std::vector<double> taps; // row-major

    Kernel() = default;
    Kernel(int r, int c, std::vector<double> t);

    double at(int i, int j) const {
        return taps[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                    static_cast<std::size_t>(j)];
    }
};

struct FilterBank {
    std::vector<Kernel> kernels;
    std::vector<double> weights;         // mu_k >= 0
    std::vector<double> spectral_bounds; // s_k, filled by build_regularizer

    std::size_t size() const { return kernels.size(); }
};

// Horizontal and vertical first differences.
FilterBank difference_bank();
// First differences plus the eight 3x3 DCT-II basis kernels with the DC atom
// removed; spans edges and textures and annihilates constants.
FilterBank default_bank();

// Plain-text bank format: per kernel a "mu=<value>" line followed by rows of
// space-separated taps; blank line between kernels.
FilterBank load_bank(const std::string& path);
void save_bank(const FilterBank& bank, const std::string& path);

ImageGrid conv_forward(const ImageGrid& x, const Kernel& k);
ImageGrid conv_adjoint(const ImageGrid& u, const Kernel& k);

// Power iteration on W^T W (seeded deterministically, 500 iterations or
// relative change < 1e-10), inflated by 1.001 as a safe upper bound on
// ||W||_op^2 for the given image shape.
double operator_norm_sq(const Kernel& k, int width, int height);

struct RegularizerHandle {
    FilterBank bank;                    // weights after budget rescaling
    std::vector<PenaltySpec> penalties; // one per filter
    double rho_total = 0.0;             // sum_k mu_k rho_k s_k, < 1
    double grad_lipschitz = 0.0;        // sum_k mu_k L_k s_k
    int width = 0;
    int height = 0;
};

// Certifies the budget for the given shape: if sum_k mu_k rho_k s_k exceeds
// target_rho, all weights are rescaled uniformly so the bound holds.
RegularizerHandle build_regularizer(const FilterBank& bank,
                                    const std::vector<PenaltySpec>& penalties,
                                    double target_rho, int width, int height);
// Shared penalty for every filter.
RegularizerHandle build_regularizer(const FilterBank& bank, const PenaltySpec& penalty,
                                    double target_rho, int width, int height);

double reg_value(const ImageGrid& x, const RegularizerHandle& h);
ImageGrid reg_grad(const ImageGrid& x, const RegularizerHandle& h);

namespace serial {
ImageGrid conv_forward(const ImageGrid& x, const Kernel& k);
ImageGrid conv_adjoint(const ImageGrid& u, const Kernel& k);
double reg_value(const ImageGrid& x, const RegularizerHandle& h);
ImageGrid reg_grad(const ImageGrid& x, const RegularizerHandle& h);
} // namespace serial

} // namespace wcr
