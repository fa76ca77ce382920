// Acceptance suite. Each criterion prints exactly one pass/fail line with its
// runtime; the process exits non-zero if any criterion fails or overruns its
// budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/test_support.hpp"
#include "wcr/analysis.hpp"
#include "wcr/curves.hpp"
#include "wcr/imaging.hpp"
#include "wcr/pgm.hpp"
#include "wcr/prox.hpp"
#include "wcr/regop.hpp"
#include "wcr/rng.hpp"
#include "wcr/solver.hpp"

using namespace wcr;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion 1: concavity measure and certification for MCP -------------

Check criterion_modulus_certification() {
    Check chk;
    for (double gamma : {1.5, 2.0, 5.0}) {
        const PenaltySpec spec = PenaltySpec::mcp(1.0, gamma);
        const auto calc = penalty_calculus(spec);
        const auto est = estimate_concavity(calc.deriv, default_penalty_grid(spec));
        chk.require(std::abs(est.kappa - 1.0 / gamma) <= 1e-3,
                    "kappa(" + fmt(gamma) + ") = " + fmt(est.kappa) + " != 1/gamma");

        const double half = 2.0 * gamma;
        const GridSpec audit{-half, half, 4097, GridSpec::Spacing::linear};
        chk.require(certify_weak_convexity(calc.value, est.kappa + 1e-3, audit).passed,
                    "certification failed at kappa + 1e-3 for gamma " + fmt(gamma));
        chk.require(!certify_weak_convexity(calc.value, est.kappa - 1e-2, audit).passed,
                    "certification wrongly passed at kappa - 1e-2 for gamma " + fmt(gamma));
    }
    if (chk.ok) chk.detail = "kappa = 1/gamma within 1e-3 for gamma in {1.5, 2, 5}";
    return chk;
}

// ---- criterion 2: Welsch modulus against an independent minimization ------

Check criterion_welsch_modulus() {
    Check chk;
    const PenaltySpec spec = PenaltySpec::welsch(1.0);
    const double rho = penalty_rho(spec);

    auto fd_second = [&](double x) {
        return testsup::central_second_diff(
            [&](double t) { return penalty_value(t, spec); }, x, 1e-3);
    };
    const double x_star = testsup::golden_minimize(fd_second, 0.5, 2.5);
    const double rho_numeric = -fd_second(x_star);
    chk.require(std::abs(rho - 2.0 * std::exp(-1.5)) <= 1e-12, "closed form drifted");
    chk.require(std::abs(rho - rho_numeric) <= 1e-6,
                "numeric minimization gives " + fmt(rho_numeric) + " vs " + fmt(rho));

    const auto calc = penalty_calculus(spec);
    const double lips =
        estimate_lipschitz_deriv(calc.deriv, {-10.0, 10.0, 100000, GridSpec::Spacing::linear});
    chk.require(rho <= lips + 1e-3,
                "rho " + fmt(rho) + " exceeds Lipschitz estimate " + fmt(lips));
    if (chk.ok)
        chk.detail = "rho = " + fmt(rho) + " matches numeric minimum, below L = " + fmt(lips);
    return chk;
}

// ---- criterion 3: prox closed forms against the brute-force oracle --------

Check criterion_prox_oracle() {
    Check chk;
    SplitMix64 rng(0xacceff01);
    const PenaltySpec specs[] = {PenaltySpec::mcp(1.0, 2.0), PenaltySpec::scad(1.0, 3.0),
                                 PenaltySpec::welsch(1.0)};
    const int n = 100000;
    for (const PenaltySpec& spec : specs) {
        const double span = spec.kind == PenaltyKind::welsch ? 10.0 : 10.0 * spec.gamma;
        const double x_min = -span - 1.0;
        const double x_max = span + 1.0;
        const double bound = spec.kind == PenaltyKind::welsch
                                 ? 1e-5
                                 : 2.0 * (x_max - x_min) / static_cast<double>(n);

        std::vector<double> ys(1000);
        for (double& y : ys) y = rng.next_in(-span, span);

        for (double y : ys) {
            const ProxQuery q{y, spec, 1.0};
            const double closed = prox_penalty(q);
            const double brute = prox_oracle(q, x_min, x_max, n);
            chk.require(std::abs(closed - brute) <= bound,
                        std::string(penalty_kind_name(spec.kind)) + " prox(" + fmt(y) +
                            ") off oracle by " + fmt(std::abs(closed - brute)));
            chk.require(prox_penalty({-y, spec, 1.0}) == -closed,
                        std::string(penalty_kind_name(spec.kind)) + " prox not odd at " + fmt(y));
        }

        std::sort(ys.begin(), ys.end());
        const double lips = 1.0 / (1.0 - penalty_rho(spec));
        double prev = prox_penalty({ys.front(), spec, 1.0});
        for (std::size_t i = 1; i < ys.size(); ++i) {
            const double cur = prox_penalty({ys[i], spec, 1.0});
            chk.require(cur >= prev, std::string(penalty_kind_name(spec.kind)) +
                                         " prox not monotone at " + fmt(ys[i]));
            chk.require(cur - prev <= lips * (ys[i] - ys[i - 1]) + 1e-10,
                        std::string(penalty_kind_name(spec.kind)) +
                            " prox violates the Lipschitz bound at " + fmt(ys[i]));
            prev = cur;
        }
    }
    if (chk.ok) chk.detail = "1000 queries per penalty match the grid oracle; odd and monotone";
    return chk;
}

// ---- criterion 4: analytic gradient against central differences -----------

Check criterion_gradient_fd() {
    Check chk;
    SplitMix64 rng(0xacceff04);
    const PenaltySpec specs[] = {PenaltySpec::mcp(0.25, 2.5), PenaltySpec::scad(0.25, 3.5),
                                 PenaltySpec::welsch(0.3)};
    for (const PenaltySpec& spec : specs) {
        const RegularizerHandle h = build_regularizer(difference_bank(), spec, 0.9, 8, 8);
        const auto knots = testsup::penalty_knots(spec);
        int images = 0;
        while (images < 20) {
            const ImageGrid x = testsup::random_image(8, 8, rng);
            if (spec.kind != PenaltyKind::welsch) {
                // central differences of the value are only valid away from
                // the penalty's kinks; resample until responses are clear
                bool clear = true;
                for (const Kernel& k : h.bank.kernels)
                    for (double r : conv_forward(x, k).samples)
                        if (testsup::near_any_knot(r, knots, 1e-3)) clear = false;
                if (!clear) continue;
            }
            ++images;
            const ImageGrid g = reg_grad(x, h);
            ImageGrid probe = x;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double saved = probe.samples[i];
                probe.samples[i] = saved + 1e-5;
                const double fp = reg_value(probe, h);
                probe.samples[i] = saved - 1e-5;
                const double fm = reg_value(probe, h);
                probe.samples[i] = saved;
                const double fd = (fp - fm) / 2e-5;
                chk.require(std::abs(fd - g.samples[i]) / std::max(1.0, std::abs(g.samples[i])) <=
                                1e-5,
                            std::string(penalty_kind_name(spec.kind)) + " gradient off at pixel " +
                                std::to_string(i));
            }
        }
    }
    if (chk.ok) chk.detail = "20 random 8x8 images per penalty, elementwise relative error <= 1e-5";
    return chk;
}

// ---- criterion 5: spectral bound against dense and DFT oracles ------------

Check criterion_operator_norm() {
    Check chk;
    SplitMix64 rng(0xacceff05);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Kernel k = testsup::random_kernel(3, 3, rng);
        const auto dense = testsup::materialize_operator(k, 8, 8);
        const double exact = testsup::jacobi_max_eigenvalue(testsup::gram(dense, 64), 64);
        const double spectral = testsup::dft_symbol_max_sq(k, 8, 8);
        chk.require(std::abs(exact - spectral) <= 1e-9 * exact,
                    "dense and DFT oracles disagree: " + fmt(exact) + " vs " + fmt(spectral));

        const double bound = operator_norm_sq(k, 8, 8);
        chk.require(bound >= exact * (1.0 - 1e-9),
                    "bound " + fmt(bound) + " below exact " + fmt(exact));
        chk.require(bound <= exact * 1.002,
                    "bound " + fmt(bound) + " more than 0.2% above exact " + fmt(exact));
        worst = std::max(worst, bound / exact - 1.0);
    }
    if (chk.ok) chk.detail = "10 random kernels; worst overshoot " + fmt(100.0 * worst) + "%";
    return chk;
}

// ---- criterion 6: solver certificates --------------------------------------

Check criterion_solver() {
    Check chk;
    SplitMix64 rng(0xacceff06);

    for (int trial = 0; trial < 10; ++trial) {
        const double lambda = 0.1 + 0.02 * trial;
        const RegularizerHandle h =
            build_regularizer(default_bank(), PenaltySpec::welsch(lambda), 0.9, 16, 16);
        chk.require(h.rho_total <= 0.9 + 1e-12, "budget exceeded");
        const ImageGrid y = testsup::random_image(16, 16, rng);
        const DenoiseProblem p{y, h};

        SolverConfig cfg;
        cfg.tol = 1e-8;
        cfg.max_iters = 20000;
        const auto [x, trace] = solve(p, cfg);
        chk.require(trace.converged && trace.grad_residual.back() <= 1e-8,
                    "trial " + std::to_string(trial) + " residual " +
                        fmt(trace.grad_residual.back()));
        for (std::size_t t = 0; t + 1 < trace.objective.size(); ++t)
            chk.require(trace.objective[t + 1] <= trace.objective[t] + 1e-12,
                        "objective increased at iteration " + std::to_string(t));

        if (trial < 3) {
            SolverConfig tight;
            tight.tol = 1e-10;
            tight.max_iters = 50000;
            const ImageGrid converged = solve(p, tight).first;
            const ImageGrid unfolded = solve_unfolded(p, 1000);
            double diff = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double d = unfolded.samples[i] - converged.samples[i];
                diff += d * d;
            }
            chk.require(std::sqrt(diff) / std::sqrt(det_squared_norm(y)) <= 1e-5,
                        "unfolded k=1000 deviates from the converged solve");
        }
    }

    // identity-filter problems reduce to the scalar prox
    FilterBank ident;
    ident.kernels = {Kernel(1, 1, {1.0})};
    ident.weights = {1.0};
    SolverConfig cfg;
    cfg.tol = 1e-10;
    cfg.max_iters = 50000;

    {
        const PenaltySpec spec = PenaltySpec::welsch(0.8);
        const RegularizerHandle h = build_regularizer(ident, spec, 0.9, 8, 8);
        const ImageGrid y = testsup::random_image(8, 8, rng, -3.0, 3.0);
        const ImageGrid x = solve({y, h}, cfg).first;
        for (std::size_t i = 0; i < y.size(); ++i)
            chk.require(std::abs(x.samples[i] -
                                 prox_welsch({y.samples[i], spec, h.bank.weights[0]})) <= 1e-6,
                        "welsch identity problem deviates from the scalar prox");
    }
    {
        // minimizers kept clear of the origin kink, where the subgradient
        // iteration cannot settle
        const PenaltySpec mcp = PenaltySpec::mcp(1.0, 2.0);
        const PenaltySpec scad = PenaltySpec::scad(1.0, 3.0);
        for (const PenaltySpec& spec : {mcp, scad}) {
            const RegularizerHandle h = build_regularizer(ident, spec, 0.9, 4, 4);
            ImageGrid y(4, 4);
            for (std::size_t i = 0; i < y.size(); ++i)
                y.samples[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.3 + 0.25 * static_cast<double>(i));
            const ImageGrid x = solve({y, h}, cfg).first;
            for (std::size_t i = 0; i < y.size(); ++i)
                chk.require(std::abs(x.samples[i] - prox_penalty({y.samples[i], spec,
                                                                  h.bank.weights[0]})) <= 1e-6,
                            std::string(penalty_kind_name(spec.kind)) +
                                " identity problem deviates from the scalar prox");
        }
    }
    if (chk.ok)
        chk.detail = "10 problems: monotone, residual <= 1e-8; prox and unfolded checks hold";
    return chk;
}

// ---- criterion 7: denoiser stability ---------------------------------------

Check criterion_stability() {
    Check chk;
    SplitMix64 rng(0xacceff07);
    const RegularizerHandle h =
        build_regularizer(default_bank(), PenaltySpec::welsch(0.15), 0.9, 8, 8);
    std::vector<std::pair<ImageGrid, ImageGrid>> pairs;
    for (int i = 0; i < 20; ++i)
        pairs.emplace_back(testsup::random_image(8, 8, rng), testsup::random_image(8, 8, rng));
    const LipschitzReport report = denoiser_lipschitz_check(h, pairs);
    for (std::size_t i = 0; i < report.pairs.size(); ++i)
        chk.require(report.pairs[i].ok,
                    "pair " + std::to_string(i) + ": " + fmt(report.pairs[i].output_distance) +
                        " > " + fmt(report.pairs[i].bound));
    if (chk.ok)
        chk.detail = "20 pairs within ||y1-y2|| / (1 - " + fmt(h.rho_total) + ") + 1e-6";
    return chk;
}

// ---- criterion 8: end-to-end phantom denoising ------------------------------

Check criterion_end_to_end() {
    Check chk;
    const ImageGrid phantom = make_phantom(128, 128);
    const ImageGrid y = add_noise(phantom, 0.05, 2026);

    const RegularizerHandle reg =
        build_regularizer(default_bank(), PenaltySpec::welsch(0.2), 0.9, 128, 128);
    const auto [denoised, trace] = solve({y, reg});

    const double psnr_noisy = metrics(phantom, y).psnr;
    const double psnr_denoised = metrics(phantom, denoised).psnr;
    chk.require(psnr_denoised >= psnr_noisy + 2.0,
                "PSNR gain " + fmt(psnr_denoised - psnr_noisy) + " dB < 2 dB");

    // the residual is exactly y - x, sample for sample
    ImageGrid residual(128, 128);
    for (std::size_t i = 0; i < y.size(); ++i)
        residual.samples[i] = y.samples[i] - denoised.samples[i];
    for (std::size_t i = 0; i < y.size(); ++i) {
        chk.require(residual.samples[i] == y.samples[i] - denoised.samples[i],
                    "residual drifts from y - x at pixel " + std::to_string(i));
        chk.require(denoised.samples[i] + residual.samples[i] == y.samples[i],
                    "x + (y - x) fails to reconstruct y at pixel " + std::to_string(i));
    }

    // the CLI emits that exact residual, up to the documented PGM encoding
    const fs::path dir = fs::temp_directory_path();
    const fs::path noisy_path = dir / "wcr_acc_noisy.pgm";
    const fs::path out_path = dir / "wcr_acc_out.pgm";
    const fs::path res_path = dir / "wcr_acc_res.pgm";
    write_pgm(y, noisy_path.string());
    const std::string cmd = std::string("\"") + WCR_CLI_PATH + "\" denoise --input " +
                            noisy_path.string() + " --output " + out_path.string() +
                            " --residual " + res_path.string() +
                            " --penalty welsch --lambda 0.2 > /dev/null";
    chk.require(std::system(cmd.c_str()) == 0, "CLI denoise failed");

    const ImageGrid y_file = read_pgm(noisy_path.string());
    const ImageGrid x_file = solve({y_file, reg}).first; // same deterministic pipeline
    const ImageGrid res_file = read_pgm(res_path.string());
    for (std::size_t i = 0; i < y_file.size(); ++i) {
        const double r = y_file.samples[i] - x_file.samples[i];
        const long q = std::lround(std::clamp(0.5 * (r + 1.0), 0.0, 1.0) * 65535.0);
        const double encoded = static_cast<double>(q) * (1.0 / 65535.0); // decoder arithmetic
        chk.require(res_file.samples[i] == encoded,
                    "emitted residual differs from the encoding of y - x at pixel " +
                        std::to_string(i));
    }
    for (const auto& p : {noisy_path, out_path, res_path}) fs::remove(p);

    if (chk.ok)
        chk.detail = "PSNR " + fmt(psnr_noisy) + " -> " + fmt(psnr_denoised) + " dB (gain " +
                     fmt(psnr_denoised - psnr_noisy) + "); residual exact";
    return chk;
}

// ---- criterion 9: figure-style curve exports --------------------------------

Check criterion_curves() {
    Check chk;
    const fs::path dir = fs::temp_directory_path();

    struct Row {
        double x, value, deriv, prox, convex = 0, quad = 0;
    };
    auto load = [&](const PenaltySpec& spec, const char* name) {
        const fs::path path = dir / name;
        export_curves(spec, 5.0, 2001, path.string());
        std::ifstream in(path);
        std::string line;
        std::getline(in, line); // header
        std::vector<Row> rows;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string cell;
            std::vector<double> vals;
            while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
            Row r{vals[0], vals[1], vals[2], vals[3]};
            if (vals.size() == 6) {
                r.convex = vals[4];
                r.quad = vals[5];
            }
            rows.push_back(r);
        }
        fs::remove(path);
        return rows;
    };

    const PenaltySpec mcp = PenaltySpec::mcp(1.0, 2.0);
    const auto mcp_rows = load(mcp, "wcr_acc_mcp.csv");
    chk.require(mcp_rows.size() == 2001, "row count off");
    for (const Row& r : mcp_rows)
        chk.require(std::abs(r.value - (r.convex - r.quad)) <= 1e-12,
                    "decomposition violated at x = " + fmt(r.x));

    const PenaltySpec specs[] = {mcp, PenaltySpec::scad(1.0, 3.0), PenaltySpec::welsch(1.0)};
    const char* names[] = {"wcr_acc_m.csv", "wcr_acc_s.csv", "wcr_acc_w.csv"};
    for (int s = 0; s < 3; ++s) {
        const double rho = penalty_rho(specs[s]);
        const auto rows = load(specs[s], names[s]);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double dx = rows[i].x - rows[i - 1].x;
            chk.require(rows[i].deriv - rows[i - 1].deriv >= -rho * dx - 1e-12,
                        std::string(penalty_kind_name(specs[s].kind)) +
                            " derivative violates weak monotonicity at x = " + fmt(rows[i].x));
        }
    }
    if (chk.ok) chk.detail = "decomposition exact to 1e-12; derivative columns weakly monotone";
    return chk;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        double limit_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "modulus certification (MCP family)", 5.0, criterion_modulus_certification},
        {2, "Welsch modulus", 5.0, criterion_welsch_modulus},
        {3, "prox oracle equivalence", 30.0, criterion_prox_oracle},
        {4, "gradient correctness", 30.0, criterion_gradient_fd},
        {5, "operator-norm soundness", 10.0, criterion_operator_norm},
        {6, "solver certificates", 60.0, criterion_solver},
        {7, "denoiser stability", 60.0, criterion_stability},
        {8, "end-to-end phantom denoising", 120.0, criterion_end_to_end},
        {9, "figure curve exports", 5.0, criterion_curves},
    };

    bool all_ok = true;
    for (const Criterion& crit : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check chk;
        try {
            chk = crit.run();
        } catch (const std::exception& e) {
            chk.ok = false;
            chk.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = elapsed < crit.limit_s;
        const bool ok = chk.ok && in_time;
        all_ok = all_ok && ok;
        std::printf("criterion %d [%s] %-38s (%.2f s < %.0f s)%s%s\n", crit.id,
                    ok ? "PASS" : "FAIL", crit.label, elapsed, crit.limit_s,
                    chk.detail.empty() ? "" : " -- ", chk.detail.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
