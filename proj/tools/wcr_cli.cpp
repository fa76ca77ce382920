// Batch front end: noise injection, denoising, metrics, penalty curve export
// and weak-convexity certification. All numeric output goes to stdout as
// key=value lines; any error exits with a non-zero status.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include "wcr/analysis.hpp"
#include "wcr/curves.hpp"
#include "wcr/errors.hpp"
#include "wcr/format.hpp"
#include "wcr/imaging.hpp"
#include "wcr/pgm.hpp"
#include "wcr/regop.hpp"
#include "wcr/solver.hpp"

namespace {

struct PenaltyFlags {
    std::string kind = "welsch";
    double lambda = 0.0;
    double gamma = 0.0; // 0 means "use the kind default"
};

void add_penalty_flags(CLI::App* cmd, PenaltyFlags& flags, double default_lambda) {
    flags.lambda = default_lambda;
    cmd->add_option("--penalty", flags.kind, "Penalty kind: mcp, scad or welsch")
        ->check(CLI::IsMember({"mcp", "scad", "welsch"}))
        ->capture_default_str();
    cmd->add_option("--lambda", flags.lambda, "Penalty threshold/scale (> 0)")
        ->capture_default_str();
    cmd->add_option("--gamma", flags.gamma,
                    "Concavity knob; defaults to 2 for mcp, 3.7 for scad; ignored by welsch");
}

wcr::PenaltySpec make_penalty(const PenaltyFlags& flags) {
    if (flags.kind == "mcp")
        return wcr::PenaltySpec::mcp(flags.lambda, flags.gamma > 0.0 ? flags.gamma : 2.0);
    if (flags.kind == "scad")
        return wcr::PenaltySpec::scad(flags.lambda, flags.gamma > 0.0 ? flags.gamma : 3.7);
    return wcr::PenaltySpec::welsch(flags.lambda);
}

wcr::FilterBank make_bank(const std::string& filters) {
    if (filters == "diff") return wcr::difference_bank();
    if (filters == "dct3") return wcr::default_bank();
    if (filters.rfind("file:", 0) == 0) return wcr::load_bank(filters.substr(5));
    throw wcr::ParameterError("--filters must be diff, dct3 or file:<path>");
}

void print_kv(const char* key, double value) {
    std::printf("%s=%s\n", key, wcr::format_double(value).c_str());
}

void print_kv(const char* key, const std::string& value) {
    std::printf("%s=%s\n", key, value.c_str());
}

int run_denoise(const std::string& input, const std::string& output,
                const std::string& residual_path, const PenaltyFlags& pflags,
                const std::string& filters, double target_rho, int iters, double tol,
                int unfold_k) {
    const wcr::ImageGrid y = wcr::read_pgm(input);
    const wcr::PenaltySpec penalty = make_penalty(pflags);
    const wcr::RegularizerHandle reg =
        wcr::build_regularizer(make_bank(filters), penalty, target_rho, y.width, y.height);
    const wcr::DenoiseProblem problem{y, reg};

    wcr::ImageGrid denoised(y.width, y.height);
    if (unfold_k >= 0) {
        denoised = wcr::solve_unfolded(problem, unfold_k);
        print_kv("mode", std::string("unfolded"));
        print_kv("layers", static_cast<double>(unfold_k));
    } else {
        wcr::SolverConfig cfg;
        cfg.max_iters = iters;
        cfg.tol = tol;
        auto [x, trace] = wcr::solve(problem, cfg);
        denoised = std::move(x);
        print_kv("mode", std::string("solve"));
        print_kv("iters_run", static_cast<double>(trace.iters_run));
        print_kv("converged", std::string(trace.converged ? "true" : "false"));
        print_kv("objective", trace.objective.back());
        print_kv("grad_residual", trace.grad_residual.back());
    }
    print_kv("rho_total", reg.rho_total);
    print_kv("step", wcr::auto_step(reg));

    wcr::write_pgm(denoised, output);
    if (!residual_path.empty()) {
        // residual y - x, stored in PGM range via r -> (r+1)/2
        wcr::ImageGrid residual(y.width, y.height);
        for (std::size_t i = 0; i < y.size(); ++i)
            residual.samples[i] = y.samples[i] - denoised.samples[i];
        wcr::ImageGrid encoded(y.width, y.height);
        for (std::size_t i = 0; i < y.size(); ++i)
            encoded.samples[i] = 0.5 * (residual.samples[i] + 1.0);
        wcr::write_pgm(encoded, residual_path);
        print_kv("residual_energy", wcr::det_squared_norm(residual));
    }
    return 0;
}

int run_certify(const PenaltyFlags& pflags, const std::string& filters, double target_rho,
                int width, int height) {
    const wcr::PenaltySpec penalty = make_penalty(pflags);
    const auto calc = wcr::penalty_calculus(penalty);
    bool ok = true;

    print_kv("penalty", std::string(wcr::penalty_kind_name(penalty.kind)));
    print_kv("lambda", penalty.lambda);
    if (penalty.kind != wcr::PenaltyKind::welsch) print_kv("gamma", penalty.gamma);

    const double rho = wcr::penalty_rho(penalty);
    print_kv("rho_closed_form", rho);

    const auto est = wcr::estimate_concavity(calc.deriv, wcr::default_penalty_grid(penalty));
    print_kv("kappa_estimate", est.kappa);
    print_kv("kappa_witness_x1", est.witness_x1);
    print_kv("kappa_witness_x2", est.witness_x2);
    const bool kappa_ok = std::abs(est.kappa - rho) <= 1e-3;
    print_kv("kappa_matches_rho", std::string(kappa_ok ? "pass" : "fail"));
    ok = ok && kappa_ok;

    const double half = penalty.kind == wcr::PenaltyKind::welsch
                            ? 5.0 * penalty.lambda
                            : 2.0 * penalty.gamma * penalty.lambda;
    const wcr::GridSpec audit{-half, half, 4097, wcr::GridSpec::Spacing::linear};
    const bool pass_above = wcr::certify_weak_convexity(calc.value, est.kappa + 1e-3, audit).passed;
    const bool fail_below =
        !wcr::certify_weak_convexity(calc.value, est.kappa - 1e-2, audit).passed;
    print_kv("certify_pass_above_kappa", std::string(pass_above ? "pass" : "fail"));
    print_kv("certify_fail_below_kappa", std::string(fail_below ? "pass" : "fail"));
    ok = ok && pass_above && fail_below;

    // Welsch is smooth through 0; MCP/SCAD flip sign there, so their
    // derivative slope is only meaningful on the open half line
    const wcr::GridSpec lips_grid =
        penalty.kind == wcr::PenaltyKind::welsch
            ? wcr::GridSpec{-10.0 * penalty.lambda, 10.0 * penalty.lambda, 100000,
                            wcr::GridSpec::Spacing::linear}
            : wcr::default_penalty_grid(penalty);
    const double lips = wcr::estimate_lipschitz_deriv(calc.deriv, lips_grid);
    print_kv("deriv_lipschitz_estimate", lips);
    if (penalty.kind == wcr::PenaltyKind::welsch) {
        const bool lips_ok = rho <= lips + 1e-3;
        print_kv("rho_below_lipschitz", std::string(lips_ok ? "pass" : "fail"));
        ok = ok && lips_ok;
    }

    if (!filters.empty()) {
        const wcr::RegularizerHandle reg =
            wcr::build_regularizer(make_bank(filters), penalty, target_rho, width, height);
        print_kv("bank_filters", static_cast<double>(reg.bank.size()));
        for (std::size_t k = 0; k < reg.bank.size(); ++k) {
            std::printf("filter_%zu mu=%s spectral_bound=%s\n", k,
                        wcr::format_double(reg.bank.weights[k]).c_str(),
                        wcr::format_double(reg.bank.spectral_bounds[k]).c_str());
        }
        print_kv("rho_total", reg.rho_total);
        print_kv("grad_lipschitz", reg.grad_lipschitz);
        const bool budget_ok = reg.rho_total <= target_rho + 1e-12;
        print_kv("budget_within_target", std::string(budget_ok ? "pass" : "fail"));
        ok = ok && budget_ok;
    }

    print_kv("status", std::string(ok ? "ok" : "failed"));
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly convex ridge-regularized image denoising toolkit"};
    app.require_subcommand(1);

    auto* denoise = app.add_subcommand("denoise", "Denoise a PGM image");
    std::string input, output, residual;
    PenaltyFlags den_penalty;
    std::string filters = "dct3";
    double target_rho = 0.9;
    int iters = 500;
    double tol = 1e-8;
    int unfold_k = -1;
    denoise->add_option("--input", input, "Noisy PGM (P5) image")->required();
    denoise->add_option("--output", output, "Denoised 16-bit PGM output")->required();
    denoise->add_option("--residual", residual, "Optional residual PGM; stores (y - x + 1)/2");
    add_penalty_flags(denoise, den_penalty, 0.2);
    denoise->add_option("--filters", filters, "Filter bank: diff, dct3 or file:<path>")
        ->capture_default_str();
    denoise->add_option("--target-rho", target_rho, "Weak-convexity budget in (0,1)")
        ->capture_default_str();
    denoise->add_option("--iters", iters, "Iteration cap")->capture_default_str();
    denoise->add_option("--tol", tol, "Relative gradient tolerance")->capture_default_str();
    denoise->add_option("--unfold", unfold_k,
                        "Run exactly K unfolded iterations instead of solving to tolerance");

    auto* noise = app.add_subcommand("noise", "Add clamped Gaussian noise to a PGM image");
    std::string n_input, n_output;
    double sigma = 0.05;
    std::uint64_t seed = 1;
    noise->add_option("--input", n_input, "Clean PGM image")->required();
    noise->add_option("--output", n_output, "Noisy PGM output")->required();
    noise->add_option("--sigma", sigma, "Noise standard deviation in (0,1)")
        ->capture_default_str();
    noise->add_option("--seed", seed, "PRNG seed")->capture_default_str();

    auto* metrics_cmd = app.add_subcommand("metrics", "Compare two PGM images");
    std::string m_ref, m_test;
    metrics_cmd->add_option("--ref", m_ref, "Reference image")->required();
    metrics_cmd->add_option("--input", m_test, "Image under test")->required();

    auto* curves = app.add_subcommand("curves", "Export penalty/derivative/prox curves as CSV");
    PenaltyFlags c_penalty;
    std::string c_output;
    double range = 5.0;
    int samples = 1001;
    add_penalty_flags(curves, c_penalty, 1.0);
    curves->add_option("--output", c_output, "CSV output path")->required();
    curves->add_option("--range", range, "Half range; samples cover [-range, range]")
        ->capture_default_str();
    curves->add_option("--samples", samples, "Number of rows")->capture_default_str();

    auto* certify = app.add_subcommand("certify", "Run the weak-convexity certification suite");
    PenaltyFlags cert_penalty;
    std::string cert_filters;
    double cert_rho = 0.9;
    int cert_w = 64, cert_h = 64;
    add_penalty_flags(certify, cert_penalty, 1.0);
    certify->add_option("--filters", cert_filters,
                        "Also certify a filter-bank budget: diff, dct3 or file:<path>");
    certify->add_option("--target-rho", cert_rho, "Budget for the bank check")
        ->capture_default_str();
    certify->add_option("--width", cert_w, "Image width for spectral bounds")
        ->capture_default_str();
    certify->add_option("--height", cert_h, "Image height for spectral bounds")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (denoise->parsed())
            return run_denoise(input, output, residual, den_penalty, filters, target_rho, iters,
                               tol, unfold_k);
        if (noise->parsed()) {
            wcr::write_pgm(wcr::add_noise(wcr::read_pgm(n_input), sigma, seed), n_output);
            print_kv("sigma", sigma);
            print_kv("seed", static_cast<double>(seed));
            return 0;
        }
        if (metrics_cmd->parsed()) {
            const wcr::MetricsReport rep =
                wcr::metrics(wcr::read_pgm(m_ref), wcr::read_pgm(m_test));
            print_kv("mse", rep.mse);
            print_kv("psnr", rep.psnr);
            print_kv("residual_energy", rep.residual_energy);
            return 0;
        }
        if (curves->parsed()) {
            wcr::export_curves(make_penalty(c_penalty), range, samples, c_output);
            print_kv("output", c_output);
            print_kv("rows", static_cast<double>(samples));
            return 0;
        }
        if (certify->parsed())
            return run_certify(cert_penalty, cert_filters, cert_rho, cert_w, cert_h);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
