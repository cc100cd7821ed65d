#include <doctest.h>

#include <random>

#include "orka/io.hpp"
#include "orka/reference.hpp"
#include "test_util.hpp"

using namespace orka;
using testutil::random_grid;
using testutil::random_path;

// The OpenMP kernels must agree with the serial reference implementations.

TEST_CASE("objective parity") {
    std::mt19937 rng(71);
    for (int t = 0; t < 20; ++t) {
        Grid d = random_grid(rng, 16, 8);
        Path l = random_path(rng, 8, 3);
        double mu = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
        Coupling c = build_coupling(8, mu, 7);
        for (int band : {-1, 2, 4, 7}) {
            CHECK(objective(d, l, c, band) ==
                  doctest::Approx(ref::objective(d, l, c, band)).epsilon(1e-12));
        }
    }
}

TEST_CASE("correlation table parity") {
    std::mt19937 rng(72);
    for (int t = 0; t < 10; ++t) {
        Grid d = random_grid(rng, 20, 7);
        CorrTable a = precompute_correlations(d, 2, 4);
        CorrTable b = ref::precompute_correlations(d, 2, 4);
        REQUIRE(a.by_band.size() == b.by_band.size());
        for (std::size_t i = 0; i < a.by_band.size(); ++i) {
            REQUIRE(a.by_band[i].size() == b.by_band[i].size());
            for (std::size_t j = 0; j < a.by_band[i].size(); ++j)
                CHECK(a.by_band[i][j] ==
                      doctest::Approx(b.by_band[i][j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("wavelet grid parity") {
    std::mt19937 rng(73);
    for (const char* name : {"haar", "db2", "db6"}) {
        WaveletFilter f = wavelet_filter(name);
        Grid d = random_grid(rng, 32, 6);
        auto [low, high] = dwt_grid(d, f);
        auto [rlow, rhigh] = ref::dwt_grid(d, f);
        CHECK(low.data == rlow.data);
        CHECK(high.data == rhigh.data);
    }
}

TEST_CASE("generator parity") {
    Grid a = generate_gauss({96, 12, 6.5, 1.75, 40.0});
    Grid b = ref::generate_gauss_serial(96, 12, 6.5, 1.75, 40.0);
    CHECK(a.data == b.data);
}

TEST_CASE("longest path parity") {
    std::mt19937 rng(74);
    std::uniform_int_distribution<std::size_t> nn(3, 9), mm(3, 10);
    std::uniform_int_distribution<long> cc(0, 2);
    std::uniform_real_distribution<double> mus(0.0, 10.0);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = nn(rng);
        std::size_t m = 2 * mm(rng);
        long c = cc(rng);
        int k = std::uniform_int_distribution<int>(1, int(n) - 1)(rng);
        Grid d = random_grid(rng, m, n);
        CAPTURE(t);
        KGraph g = build_graph(d, c, k, mus(rng));
        TrellisSolution fast = longest_path(g);
        TrellisSolution naive = ref::longest_path_naive(g);
        CHECK(fast.lambda == naive.lambda);
        CHECK(fast.value == doctest::Approx(naive.value).epsilon(1e-11));
        CHECK(fast.node_count == naive.node_count);
    }
}
