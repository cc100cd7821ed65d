#include <doctest.h>

#include <cmath>
#include <random>

#include "orka/io.hpp"
#include "orka/multires.hpp"
#include "test_util.hpp"

using namespace orka;

namespace {

// Gauge-free comparison: sum of absolute step differences.
double step_error(const Path& a, const Path& b) {
    REQUIRE(a.size() == b.size());
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k)
        e += std::labs((a[k + 1] - a[k]) - (b[k + 1] - b[k]));
    return e;
}

}  // namespace

TEST_CASE("select_levels formula") {
    CHECK(select_levels(1, 0) == 0);
    CHECK(select_levels(3, 3) == 1);
    CHECK(select_levels(10, 0) == 3);
    CHECK(select_levels(2, 0) == 1);
    CHECK(select_levels(1, 3) == 0);
    CHECK(select_levels(4, 0) == 2);   // 4 + 1 needs ceil(log2 5) = 3
    CHECK(select_levels(16, 4) == 4);  // 16 + 1/16: ceil(log2) = 5
    CHECK_THROWS_AS(select_levels(0, 0), std::invalid_argument);
}

TEST_CASE("config validation") {
    MultiresConfig cfg;
    cfg.filter = wavelet_filter("haar");
    cfg.c_prime = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.filter = wavelet_filter("haar");
    cfg.upsample_levels = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // no filter
}

TEST_CASE("J=0 with a flat pyramid reduces to the single solve") {
    std::mt19937 rng(41);
    Grid d = testutil::random_smooth_grid(rng, 32, 8);
    MultiresConfig cfg;
    cfg.c_prime = 1;
    cfg.k = 3;
    cfg.mu = 2.0;
    cfg.filter = wavelet_filter("db2");
    MultiresResult r = solve_multires(d, cfg);

    OrkaConfig scfg;
    scfg.c = 1;
    scfg.k = 3;
    scfg.mu = 2.0;
    SingleResult s = solve_single(d, scfg);
    CHECK(r.trace.final_path == s.estimate.path);
    CHECK(r.trace.levels.size() == 1);
    CHECK(r.trace.scale == 0);
    CHECK(r.estimate.appearance.data == s.estimate.appearance.data);
}

TEST_CASE("integer Gauss shift through the pyramid") {
    Grid d = generate_gauss({256, 32, 6.0, 6.0});
    MultiresConfig cfg;
    cfg.c_prime = 6;
    cfg.k = 4;
    cfg.mu = 1.0;
    cfg.filter = wavelet_filter("db6");
    MultiresResult r = solve_multires(d, cfg);
    REQUIRE(r.trace.final_path.size() == 32);
    CHECK(r.trace.scale == 0);
    for (std::size_t k = 0; k + 1 < 32; ++k)
        CHECK(r.trace.final_path[k + 1] - r.trace.final_path[k] == 6);

    // strictly fewer trellis nodes than the direct solve at C=6
    Grid probe(4, 32);
    KGraph g = build_graph(probe, 6, 4, 1.0);
    CHECK(r.trace.total_nodes < g.node_count);
    CHECK(r.trace.step_bound_violations == 0);
}

TEST_CASE("per-level updates stay within unit steps") {
    std::mt19937 rng(42);
    for (int t = 0; t < 5; ++t) {
        Grid d = testutil::random_smooth_grid(rng, 64, 10);
        MultiresConfig cfg;
        cfg.c_prime = 4;
        cfg.upsample_levels = 2;
        cfg.k = 3;
        cfg.mu = 1.0;
        cfg.filter = wavelet_filter("db2");
        MultiresResult r = solve_multires(d, cfg);
        for (const LevelRecord& lr : r.trace.levels)
            for (std::size_t k = 0; k + 1 < lr.update.size(); ++k) {
                long s = lr.update[k + 1] - lr.update[k];
                CHECK(s >= -1);
                CHECK(s <= 1);
            }
    }
}

TEST_CASE("step decomposition reconstructs the final path exactly") {
    std::mt19937 rng(43);
    Grid d = testutil::random_smooth_grid(rng, 64, 12);
    MultiresConfig cfg;
    cfg.c_prime = 4;
    cfg.upsample_levels = 2;
    cfg.k = 4;
    cfg.mu = 0.7;
    cfg.filter = wavelet_filter("db2");
    MultiresResult r = solve_multires(d, cfg);
    const int j = cfg.upsample_levels;
    const std::size_t n = d.cols;
    // Coarsest record carries the level-L path itself; every later record
    // contributes its update scaled by the level's grid spacing.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        long expect = 0;
        for (std::size_t i = 0; i < r.trace.levels.size(); ++i) {
            const LevelRecord& lr = r.trace.levels[i];
            const Path& contrib = i == 0 ? lr.path : lr.update;
            long alpha = contrib[k + 1] - contrib[k];
            if (i > 0) {
                CHECK(alpha >= -1);
                CHECK(alpha <= 1);
            }
            expect += alpha * (1L << (j + lr.level));
        }
        CHECK(r.trace.final_path[k + 1] - r.trace.final_path[k] == expect);
    }
    // accumulated paths in the trace chain together
    for (std::size_t i = 1; i < r.trace.levels.size(); ++i) {
        const Path& prev = r.trace.levels[i - 1].path;
        const Path& cur = r.trace.levels[i].path;
        const Path& up = r.trace.levels[i].update;
        for (std::size_t k = 0; k < n; ++k) CHECK(cur[k] == 2 * prev[k] + up[k]);
    }
}

TEST_CASE("work bound across levels") {
    Grid d = generate_gauss({128, 16, 5.0, 2.0});
    MultiresConfig cfg;
    cfg.c_prime = 3;
    cfg.upsample_levels = 2;
    cfg.k = 3;
    cfg.mu = 1.0;
    cfg.filter = wavelet_filter("haar");
    MultiresResult r = solve_multires(d, cfg);
    const int l = select_levels(3, 2);
    std::size_t bound = std::size_t(l + 2 + 1) * 16;
    for (int q = 0; q < 3; ++q) bound *= 3;
    CHECK(r.trace.total_nodes <= bound);
}

TEST_CASE("fractional shifts improve with upsampling") {
    const std::size_t m = 128, n = 24;
    Grid d = generate_gauss({m, n, 6.0, 1.0 / 3.0});
    double prev = -1.0;
    std::vector<double> errs;
    for (int j : {0, 3}) {
        MultiresConfig cfg;
        cfg.c_prime = 1;
        cfg.upsample_levels = j;
        cfg.k = 6;
        cfg.mu = 1.0;
        cfg.filter = wavelet_filter("db6");
        MultiresResult r = solve_multires(d, cfg);
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double truth = double(k) / 3.0;
            double got = double(r.trace.final_path[k] - r.trace.final_path[0]) /
                         double(1 << j);
            err += std::fabs(got - truth);
        }
        errs.push_back(err);
        if (prev >= 0.0) CHECK(err < prev);
        prev = err;
    }
    CHECK(errs.back() < errs.front());
}

TEST_CASE("rescale_path produces exact dyadic values") {
    SUBCASE("scale 0 is the identity") {
        auto out = rescale_path({0, 3, -2}, 0);
        REQUIRE(out.size() == 3);
        CHECK(out[0].value() == 0.0);
        CHECK(out[1].value() == 3.0);
        CHECK(out[2].value() == -2.0);
        for (const Dyadic& x : out) CHECK(x.log2_den == 0);
    }
    SUBCASE("scale 2 divides by four") {
        auto out = rescale_path({0, 5, 11}, 2);
        CHECK(out[0].value() == 0.0);
        CHECK(out[1].value() == 1.25);
        CHECK(out[2].value() == 2.75);
        CHECK(out[1].num == 5);
        CHECK(out[1].log2_den == 2);
    }
    SUBCASE("rescaled steps respect the original bound plus rounding slack") {
        std::mt19937 rng(44);
        for (int t = 0; t < 5; ++t) {
            Grid d = testutil::random_smooth_grid(rng, 64, 8);
            MultiresConfig cfg;
            cfg.c_prime = 2;
            cfg.upsample_levels = 2;
            cfg.k = 3;
            cfg.mu = 1.0;
            cfg.filter = wavelet_filter("db2");
            MultiresResult r = solve_multires(d, cfg);
            auto scaled = rescale_path(r.trace.final_path, r.trace.scale);
            // every level adds at most one unit at its grid spacing, so the
            // rescaled step can never exceed the geometric sum over levels
            const int l = r.trace.levels.front().level;
            const double worst = std::pow(2.0, l + 1) -
                                 std::pow(2.0, -cfg.upsample_levels);
            for (std::size_t k = 0; k + 1 < scaled.size(); ++k) {
                double step = std::fabs(scaled[k + 1].value() - scaled[k].value());
                CHECK(step <= worst);
            }
        }
    }
}

TEST_CASE("level override and divisibility errors") {
    std::mt19937 rng(45);
    Grid d = testutil::random_smooth_grid(rng, 24, 6);
    MultiresConfig cfg;
    cfg.c_prime = 2;
    cfg.k = 2;
    cfg.mu = 1.0;
    cfg.filter = wavelet_filter("haar");
    cfg.level_override = 4;  // 24 halves cleanly only 3 times
    CHECK_THROWS_AS(solve_multires(d, cfg), resolution_error);
    cfg.level_override = 1;
    MultiresResult r = solve_multires(d, cfg);
    CHECK(r.trace.levels.front().level == 1);
}

TEST_CASE("deeper runs refine the shallower ones") {
    // With C'=1 the pyramid depth is always 0, so a deep run's trace must
    // reproduce the final paths of shallower runs level by level.
    const std::size_t m = 64, n = 12;
    Grid d = generate_gauss({m, n, 5.0, 0.4});
    auto run = [&](int j) {
        MultiresConfig cfg;
        cfg.c_prime = 1;
        cfg.upsample_levels = j;
        cfg.k = 5;
        cfg.mu = 1.0;
        cfg.filter = wavelet_filter("db6");
        return solve_multires(d, cfg);
    };
    MultiresResult deep = run(3);
    for (int j = 0; j <= 2; ++j) {
        MultiresResult shallow = run(j);
        CHECK(shallow.trace.final_path == deep.trace.levels[j].path);
    }
    CHECK(step_error(deep.trace.final_path, deep.trace.final_path) == 0.0);
}
