// Timing comparison between the OpenMP kernels and the serial reference
// loops: forward/adjoint convolution, regularizer gradient, and a short
// unfolded denoising run.
//
// Usage: wcr_bench [side] [reps]   (defaults: 256 5)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wcr/imaging.hpp"
#include "wcr/regop.hpp"
#include "wcr/rng.hpp"
#include "wcr/solver.hpp"

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int side = argc > 1 ? std::atoi(argv[1]) : 256;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    if (side < 8 || reps < 1) {
        std::fprintf(stderr, "usage: %s [side >= 8] [reps >= 1]\n", argv[0]);
        return 1;
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("image: %dx%d, best of %d reps\n\n", side, side, reps);

    wcr::ImageGrid x(side, side);
    wcr::SplitMix64 rng(7);
    for (double& s : x.samples) s = rng.next_unit();

    const wcr::FilterBank bank = wcr::default_bank();
    const wcr::RegularizerHandle handle =
        wcr::build_regularizer(bank, wcr::PenaltySpec::welsch(0.2), 0.9, side, side);
    const wcr::Kernel& k3 = bank.kernels.back();

    volatile double sink = 0.0;
    struct Row {
        const char* name;
        std::function<void()> parallel;
        std::function<void()> serial;
    };
    const Row rows[] = {
        {"conv_forward (3x3)",
         [&] { sink = wcr::conv_forward(x, k3).samples[0]; },
         [&] { sink = wcr::serial::conv_forward(x, k3).samples[0]; }},
        {"conv_adjoint (3x3)",
         [&] { sink = wcr::conv_adjoint(x, k3).samples[0]; },
         [&] { sink = wcr::serial::conv_adjoint(x, k3).samples[0]; }},
        {"reg_value (10 filters)",
         [&] { sink = wcr::reg_value(x, handle); },
         [&] { sink = wcr::serial::reg_value(x, handle); }},
        {"reg_grad (10 filters)",
         [&] { sink = wcr::reg_grad(x, handle).samples[0]; },
         [&] { sink = wcr::serial::reg_grad(x, handle).samples[0]; }},
    };

    std::printf("%-24s %12s %12s %9s\n", "kernel", "parallel [s]", "serial [s]", "speedup");
    for (const Row& row : rows) {
        const double tp = time_best_of(reps, row.parallel);
        const double ts = time_best_of(reps, row.serial);
        std::printf("%-24s %12.6f %12.6f %8.2fx\n", row.name, tp, ts, ts / tp);
    }

    const double t_solve = time_best_of(reps, [&] {
        sink = wcr::solve_unfolded({x, handle}, 20).samples[0];
    });
    std::printf("\nsolve_unfolded k=20: %.6f s (parallel kernels)\n", t_solve);
    (void)sink;
    return 0;
}
