// Compares the serial reference kernels against the OpenMP kernels:
// midpoint quadrature, stack construction and coarse-graining.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conecut/profile.hpp"
#include "conecut/quadrature.hpp"
#include "conecut/rg.hpp"
#include "conecut/ziggurat.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

template <class F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_seconds();
        body();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void print_row(const char* name, long long size, double serial_s,
               double parallel_s, double rel_diff) {
    std::printf("%-18s %10lld %12.4f %12.4f %8.2fx   %.3e\n", name, size,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                rel_diff);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled (serial build)\n");
#endif
    std::printf("%-18s %10s %12s %12s %9s   %s\n", "kernel", "size",
                "serial(ms)", "parallel(ms)", "speedup", "rel diff");

    const conecut::Profile cone = conecut::Profile::cone(1.0, 1.0);
    constexpr double pi = std::numbers::pi;
    const auto integrand = [&](double z) {
        const double r = 1.0 - z;
        return pi * r * r;
    };

    for (const long long panels : {1LL << 20, 1LL << 23}) {
        double v_serial = 0.0;
        double v_parallel = 0.0;
        const double ts = time_best_of(
            3, [&] { v_serial = conecut::quad::midpoint_serial(integrand, 0.0,
                                                               1.0, panels); });
        const double tp = time_best_of(
            3, [&] { v_parallel = conecut::quad::midpoint_blocked(
                         integrand, 0.0, 1.0, panels); });
        print_row("quadrature", panels, ts, tp,
                  std::abs(v_serial - v_parallel) / std::abs(v_serial));
    }

    for (const long long n : {1LL << 16, 1LL << 20}) {
        conecut::Ziggurat serial_stack;
        conecut::Ziggurat parallel_stack;
        const double ts = time_best_of(3, [&] {
            serial_stack = conecut::build_ziggurat_serial(
                cone, n, conecut::Mode::inscribed);
        });
        const double tp = time_best_of(3, [&] {
            parallel_stack =
                conecut::build_ziggurat(cone, n, conecut::Mode::inscribed);
        });
        const double vs = conecut::total_volume(serial_stack);
        const double vp = conecut::total_volume(parallel_stack);
        print_row("build_ziggurat", n, ts, tp, std::abs(vs - vp) / vs);
    }

    {
        const long long n = 1LL << 20;
        const conecut::Ziggurat stack =
            conecut::build_ziggurat(cone, n, conecut::Mode::circumscribed);
        conecut::Ziggurat serial_out;
        conecut::Ziggurat parallel_out;
        const double ts = time_best_of(
            3, [&] { serial_out = conecut::coarse_grain_serial(stack); });
        const double tp =
            time_best_of(3, [&] { parallel_out = conecut::coarse_grain(stack); });
        const double vs = conecut::total_volume(serial_out);
        const double vp = conecut::total_volume(parallel_out);
        print_row("coarse_grain", n, ts, tp, std::abs(vs - vp) / vs);
    }

    return 0;
}
