// Compares the OpenMP kernels against the serial reference implementations.
// Usage: bench_kernels [M] [N] [C] [K]

#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orka/coupling.hpp"
#include "orka/io.hpp"
#include "orka/kgraph.hpp"
#include "orka/reference.hpp"
#include "orka/wavelet.hpp"

using namespace orka;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-24s serial %8.4f s   parallel %8.4f s   speedup %.2fx\n", name,
                serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 512;
    std::size_t n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 256;
    long c = argc > 3 ? std::strtol(argv[3], nullptr, 10) : 3;
    int k = argc > 4 ? std::atoi(argv[4]) : 6;

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp master
        threads = omp_get_num_threads();
    }
#endif
    std::printf("grid %zux%zu, C=%ld, K=%d, %d thread(s)\n", m, n, c, k, threads);

    Grid d = generate_gauss({m, n, 10.0, 2.0});
    WaveletFilter f = wavelet_filter("db6");
    Coupling cp = build_coupling(n, 1.0, k);
    Path lambda(n, 0);
    for (std::size_t i = 1; i < n; ++i) lambda[i] = lambda[i - 1] + (i % 3) - 1;

    double t0, ts, tp;

    t0 = now();
    Grid g1 = ref::generate_gauss_serial(m, n, 10.0, 2.0, m / 2.0);
    ts = now() - t0;
    t0 = now();
    Grid g2 = generate_gauss({m, n, 10.0, 2.0});
    tp = now() - t0;
    report("generate_gauss", ts, tp);

    t0 = now();
    auto r1 = ref::dwt_grid(d, f);
    ts = now() - t0;
    t0 = now();
    auto r2 = dwt_grid(d, f);
    tp = now() - t0;
    report("dwt_grid", ts, tp);

    t0 = now();
    CorrTable c1 = ref::precompute_correlations(d, c, k);
    ts = now() - t0;
    t0 = now();
    CorrTable c2 = precompute_correlations(d, c, k);
    tp = now() - t0;
    report("correlations", ts, tp);

    t0 = now();
    double o1 = ref::objective(d, lambda, cp, k);
    ts = now() - t0;
    t0 = now();
    double o2 = objective(d, lambda, cp, k);
    tp = now() - t0;
    report("objective", ts, tp);
    std::printf("  objective values: %.12e vs %.12e\n", o1, o2);

    KGraph g = build_graph(d, c, k, 1.0);
    t0 = now();
    TrellisSolution s1 = ref::longest_path_naive(g);
    ts = now() - t0;
    t0 = now();
    TrellisSolution s2 = longest_path(g);
    tp = now() - t0;
    report("longest_path", ts, tp);
    std::printf("  path values: %.12e vs %.12e\n", s1.value, s2.value);
    return 0;
}
