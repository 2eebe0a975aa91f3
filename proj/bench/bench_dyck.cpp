// Compares the serial and OpenMP cumulant sums over Dyck paths.
//
// Usage: bench_dyck [max_range]   (default 12, i.e. up to C_12 = 208012 paths)

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "freekernel/dyck.hpp"

using freekernel::kmatrix::cplx;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int max_range = argc > 1 ? std::atoi(argv[1]) : 12;
    std::mt19937_64 rng(20240915);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    freekernel::schur::SchurParameterTable params(max_range);
    for (int j = 1; j <= max_range; ++j)
        for (int k = 0; k < j; ++k) {
            cplx g;
            do {
                g = cplx(u(rng), u(rng));
            } while (std::abs(g) > 1.0);
            params.set_gamma(k, j, 0.9 * g);
        }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%6s %10s %12s %12s %8s %10s\n", "m-l", "paths", "serial[ms]", "parallel[ms]",
                "speedup", "max|diff|");
    for (int range = 8; range <= max_range; ++range) {
        cplx serial_value, parallel_value;
        const double ts = time_best_of(3, [&] {
            serial_value = freekernel::dyck::kernel_by_dyck_sum_serial(params, 0, range);
        });
        const double tp = time_best_of(3, [&] {
            parallel_value = freekernel::dyck::kernel_by_dyck_sum(params, 0, range);
        });
        std::printf("%6d %10llu %12.3f %12.3f %8.2f %10.2e\n", range,
                    static_cast<unsigned long long>(freekernel::dyck::catalan(range)),
                    1e3 * ts, 1e3 * tp, ts / tp, std::abs(serial_value - parallel_value));
    }
    return 0;
}
