#include "wcr/regop.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wcr/errors.hpp"
#include "wcr/format.hpp"
#include "wcr/rng.hpp"

namespace wcr {

namespace {

void require_fits(const Kernel& k, int width, int height, const char* op) {
    if (k.rows > height || k.cols > width)
        throw ShapeError(std::string(op) + ": kernel larger than image");
}

void require_handle_shape(const ImageGrid& x, const RegularizerHandle& h, const char* op) {
    if (x.width != h.width || x.height != h.height)
        throw ShapeError(std::string(op) + ": image shape does not match regularizer");
}

inline int wrap_up(int i, int n) { return i >= n ? i - n : i; }
inline int wrap_down(int i, int n) { return i < 0 ? i + n : i; }

} // namespace

Kernel::Kernel(int r, int c, std::vector<double> t)
    : rows(r), cols(c), taps(std::move(t)) {
    if (rows <= 0 || cols <= 0 || rows % 2 == 0 || cols % 2 == 0)
        throw ParameterError("Kernel: side lengths must be positive and odd");
    if (taps.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw ParameterError("Kernel: tap count does not match dimensions");
    for (double v : taps)
        if (!std::isfinite(v)) throw ParameterError("Kernel: taps must be finite");
}

FilterBank difference_bank() {
    FilterBank bank;
    // first differences, stored with odd side lengths
    bank.kernels.emplace_back(1, 3, std::vector<double>{1.0, -1.0, 0.0});
    bank.kernels.emplace_back(3, 1, std::vector<double>{1.0, -1.0, 0.0});
    bank.weights = {1.0, 1.0};
    return bank;
}

FilterBank default_bank() {
    FilterBank bank = difference_bank();
    // 3x3 DCT-II separable basis, DC atom dropped; every remaining atom has
    // zero mean, so constants are annihilated
    const double pi = std::acos(-1.0);
    double basis[3][3];
    for (int p = 0; p < 3; ++p) {
        const double scale = p == 0 ? std::sqrt(1.0 / 3.0) : std::sqrt(2.0 / 3.0);
        for (int i = 0; i < 3; ++i)
            basis[p][i] = scale * std::cos(pi * (2.0 * i + 1.0) * p / 6.0);
    }
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            if (p == 0 && q == 0) continue;
            std::vector<double> taps(9);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    taps[static_cast<std::size_t>(3 * i + j)] = basis[p][i] * basis[q][j];
            bank.kernels.emplace_back(3, 3, std::move(taps));
            bank.weights.push_back(1.0);
        }
    }
    return bank;
}

FilterBank load_bank(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_bank: cannot open '" + path + "'");

    FilterBank bank;
    std::string line;
    std::size_t offset = 0;

    double mu = 0.0;
    bool in_block = false;
    std::vector<std::vector<double>> rows;

    auto flush_block = [&]() {
        if (!in_block) return;
        if (rows.empty())
            throw FormatError("load_bank: kernel block without rows", offset);
        const int r = static_cast<int>(rows.size());
        const int c = static_cast<int>(rows.front().size());
        std::vector<double> taps;
        taps.reserve(static_cast<std::size_t>(r) * static_cast<std::size_t>(c));
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw FormatError("load_bank: ragged kernel rows", offset);
            taps.insert(taps.end(), row.begin(), row.end());
        }
        bank.kernels.emplace_back(r, c, std::move(taps));
        bank.weights.push_back(mu);
        rows.clear();
        in_block = false;
    };

    while (std::getline(in, line)) {
        const std::size_t line_start = offset;
        offset += line.size() + 1;
        // trim trailing CR from files written on other platforms
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank) {
            flush_block();
            continue;
        }
        if (line.rfind("mu=", 0) == 0) {
            flush_block();
            mu = parse_double(std::string_view(line).substr(3), "load_bank");
            if (!(mu >= 0.0) || !std::isfinite(mu))
                throw FormatError("load_bank: weight must be a finite nonnegative number",
                                  line_start);
            in_block = true;
            continue;
        }
        if (!in_block)
            throw FormatError("load_bank: kernel rows before any mu= line", line_start);
        std::istringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) row.push_back(parse_double(tok, "load_bank"));
        rows.push_back(std::move(row));
    }
    flush_block();
    if (bank.kernels.empty()) throw FormatError("load_bank: no kernels in file", offset);
    return bank;
}

void save_bank(const FilterBank& bank, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_bank: cannot open '" + path + "'");
    for (std::size_t k = 0; k < bank.size(); ++k) {
        if (k > 0) out << "\n";
        out << "mu=" << format_double(bank.weights[k]) << "\n";
        const Kernel& kern = bank.kernels[k];
        for (int i = 0; i < kern.rows; ++i) {
            for (int j = 0; j < kern.cols; ++j) {
                if (j > 0) out << " ";
                out << format_double(kern.at(i, j));
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("save_bank: write failed for '" + path + "'");
}

ImageGrid conv_forward(const ImageGrid& x, const Kernel& k) {
    require_fits(k, x.width, x.height, "conv_forward");
    const int h = x.height;
    const int w = x.width;
    const int ci = k.rows / 2;
    const int cj = k.cols / 2;
    ImageGrid out(w, h);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = 0; i < k.rows; ++i) {
                const int rr = wrap_up(wrap_down(r - (i - ci), h), h);
                for (int j = 0; j < k.cols; ++j) {
                    const int cc = wrap_up(wrap_down(c - (j - cj), w), w);
                    acc += k.at(i, j) * x.at(rr, cc);
                }
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

ImageGrid conv_adjoint(const ImageGrid& u, const Kernel& k) {
    require_fits(k, u.width, u.height, "conv_adjoint");
    const int h = u.height;
    const int w = u.width;
    const int ci = k.rows / 2;
    const int cj = k.cols / 2;
    ImageGrid out(w, h);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = 0; i < k.rows; ++i) {
                const int rr = wrap_up(wrap_down(r + (i - ci), h), h);
                for (int j = 0; j < k.cols; ++j) {
                    const int cc = wrap_up(wrap_down(c + (j - cj), w), w);
                    acc += k.at(i, j) * u.at(rr, cc);
                }
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

double operator_norm_sq(const Kernel& k, int width, int height) {
    require_fits(k, width, height, "operator_norm_sq");

    SplitMix64 rng(0x51ab1e5eedULL);
    ImageGrid v(width, height);
    for (double& s : v.samples) s = rng.next_in(-1.0, 1.0);
    double nrm = std::sqrt(det_squared_norm(v));
    for (double& s : v.samples) s /= nrm;

    double estimate = 0.0;
    double previous = -1.0;
    for (int it = 0; it < 500; ++it) {
        const ImageGrid u = conv_forward(v, k);
        estimate = det_squared_norm(u); // Rayleigh quotient of W^T W at unit v
        if (estimate == 0.0) return 0.0;

        ImageGrid back = conv_adjoint(u, k);
        nrm = std::sqrt(det_squared_norm(back));
        if (nrm == 0.0) break;
        for (double& s : back.samples) s /= nrm;
        v = std::move(back);

        if (previous >= 0.0 && std::abs(estimate - previous) <= 1e-10 * estimate) break;
        previous = estimate;
    }
    return 1.001 * estimate;
}

RegularizerHandle build_regularizer(const FilterBank& bank,
                                    const std::vector<PenaltySpec>& penalties,
                                    double target_rho, int width, int height) {
    if (bank.kernels.empty()) throw ParameterError("build_regularizer: empty filter bank");
    if (bank.weights.size() != bank.kernels.size())
        throw ParameterError("build_regularizer: weight/kernel count mismatch");
    if (penalties.size() != bank.kernels.size())
        throw ParameterError("build_regularizer: penalty/kernel count mismatch");
    if (!(target_rho > 0.0 && target_rho < 1.0))
        throw ParameterError("build_regularizer: target_rho must lie in (0,1)");
    for (double mu : bank.weights)
        if (!(mu >= 0.0) || !std::isfinite(mu))
            throw ParameterError("build_regularizer: weights must be finite and >= 0");

    RegularizerHandle h;
    h.bank = bank;
    h.penalties = penalties;
    h.width = width;
    h.height = height;
    h.bank.spectral_bounds.resize(bank.size());
    for (std::size_t k = 0; k < bank.size(); ++k)
        h.bank.spectral_bounds[k] = operator_norm_sq(bank.kernels[k], width, height);

    double rho_raw = 0.0;
    for (std::size_t k = 0; k < bank.size(); ++k)
        rho_raw += h.bank.weights[k] * penalty_rho(penalties[k]) * h.bank.spectral_bounds[k];

    if (rho_raw > target_rho) {
        const double scale = target_rho / rho_raw;
        for (double& mu : h.bank.weights) mu *= scale;
    }

    h.rho_total = 0.0;
    h.grad_lipschitz = 0.0;
    for (std::size_t k = 0; k < bank.size(); ++k) {
        h.rho_total += h.bank.weights[k] * penalty_rho(penalties[k]) * h.bank.spectral_bounds[k];
        h.grad_lipschitz +=
            h.bank.weights[k] * penalty_deriv_lipschitz(penalties[k]) * h.bank.spectral_bounds[k];
    }
    return h;
}

RegularizerHandle build_regularizer(const FilterBank& bank, const PenaltySpec& penalty,
                                    double target_rho, int width, int height) {
    return build_regularizer(bank, std::vector<PenaltySpec>(bank.size(), penalty),
                             target_rho, width, height);
}

double reg_value(const ImageGrid& x, const RegularizerHandle& h) {
    require_handle_shape(x, h, "reg_value");
    double total = 0.0;
    std::vector<double> row_sums(static_cast<std::size_t>(x.height));
    for (std::size_t k = 0; k < h.bank.size(); ++k) {
        const double mu = h.bank.weights[k];
        if (mu == 0.0) continue;
        const ImageGrid resp = conv_forward(x, h.bank.kernels[k]);
        const PenaltySpec& pen = h.penalties[k];
#pragma omp parallel for schedule(static)
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
    require_handle_shape(x, h, "reg_grad");
    ImageGrid acc(x.width, x.height, 0.0);
    const long long n = static_cast<long long>(acc.size());
    for (std::size_t k = 0; k < h.bank.size(); ++k) {
        const double mu = h.bank.weights[k];
        if (mu == 0.0) continue;
        ImageGrid resp = conv_forward(x, h.bank.kernels[k]);
        const PenaltySpec& pen = h.penalties[k];
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(i);
            resp.samples[idx] = penalty_deriv(resp.samples[idx], pen);
        }
        const ImageGrid back = conv_adjoint(resp, h.bank.kernels[k]);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(i);
            acc.samples[idx] += mu * back.samples[idx];
        }
    }
    return acc;
}

} // namespace wcr
