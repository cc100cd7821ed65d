#include <doctest.h>

#include <cmath>
#include <random>

#include "orka/coupling.hpp"
#include "orka/grid.hpp"
#include "test_util.hpp"

using namespace orka;
using testutil::dense_coupling;
using testutil::dense_model_objective;
using testutil::dense_optimal_appearance;
using testutil::random_grid;
using testutil::random_path;

TEST_CASE("shift_columns basics") {
    std::mt19937 rng(1);
    Grid d = random_grid(rng, 6, 4);

    SUBCASE("zero path is the identity") {
        Path zero(4, 0);
        Grid out = shift_columns(d, zero);
        CHECK(out.data == d.data);
    }
    SUBCASE("unit shift rotates downward") {
        Grid g(4, 1);
        g.at(0, 0) = 1;
        g.at(1, 0) = 2;
        g.at(2, 0) = 3;
        g.at(3, 0) = 4;
        Grid out = shift_columns(g, Path{1});
        CHECK(out.at(0, 0) == 4);
        CHECK(out.at(1, 0) == 1);
        CHECK(out.at(2, 0) == 2);
        CHECK(out.at(3, 0) == 3);
    }
    SUBCASE("shift by M equals M composed unit shifts and the identity") {
        Grid step = d;
        Path ones(4, 1);
        for (std::size_t i = 0; i < d.rows; ++i) step = shift_columns(step, ones);
        Path full(4, static_cast<long>(d.rows));
        Grid direct = shift_columns(d, full);
        for (std::size_t idx = 0; idx < d.data.size(); ++idx) {
            CHECK(step.data[idx] == d.data[idx]);
            CHECK(direct.data[idx] == d.data[idx]);
        }
    }
    SUBCASE("wrong path length is a shape error") {
        CHECK_THROWS_AS(shift_columns(d, Path{0, 1}), std::invalid_argument);
    }
}

TEST_CASE("shift operator algebra on random inputs") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        Grid a = random_grid(rng, 8, 5);
        Grid b = random_grid(rng, 8, 5);
        Path l = random_path(rng, 5, 3);
        Path m = random_path(rng, 5, 3);

        Grid lhs = shift_columns(add(a, b), l);
        Grid rhs = add(shift_columns(a, l), shift_columns(b, l));
        for (std::size_t i = 0; i < lhs.data.size(); ++i)
            CHECK(lhs.data[i] == doctest::Approx(rhs.data[i]).epsilon(1e-15));

        Path sum(5);
        for (int k = 0; k < 5; ++k) sum[k] = l[k] + m[k];
        Grid comp = shift_columns(shift_columns(a, m), l);
        Grid direct = shift_columns(a, sum);
        CHECK(comp.data == direct.data);

        Path neg(5);
        for (int k = 0; k < 5; ++k) neg[k] = -l[k];
        Grid back = shift_columns(shift_columns(a, l), neg);
        CHECK(back.data == a.data);

        double ip0 = 0.0, ip1 = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) ip0 += a.data[i] * b.data[i];
        Grid sa = shift_columns(a, l), sb = shift_columns(b, l);
        for (std::size_t i = 0; i < a.data.size(); ++i)
            ip1 += sa.data[i] * sb.data[i];
        CHECK(ip1 == doctest::Approx(ip0).epsilon(1e-12));
        CHECK(frobenius_sq(sa) == doctest::Approx(frobenius_sq(a)).epsilon(1e-12));
    }
}

TEST_CASE("coupling matrix pattern and inverse") {
    SUBCASE("N=3 mu=1 matches the stated pattern") {
        Coupling c = build_coupling(3, 1.0, 2);
        CHECK(c.diag(0) == 2.0);
        CHECK(c.diag(1) == 3.0);
        CHECK(c.diag(2) == 2.0);
        // A * Ainv = I with A taken from the definition.
        auto a = dense_coupling(3, 1.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < 3; ++t) s += a[i * 3 + t] * c.inv(t, j);
                CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
    }
    SUBCASE("N=2 mu=1 analytic inverse") {
        Coupling c = build_coupling(2, 1.0, 1);
        CHECK(c.inv(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(c.inv(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(c.inv(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(c.inv(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("mu=0 decouples everything") {
        Coupling c = build_coupling(5, 0.0, 2);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                CHECK(c.inv(i, j) == (i == j ? 1.0 : 0.0));
                CHECK(c.inv_banded(i, j) == (i == j ? 1.0 : 0.0));
            }
    }
    SUBCASE("K out of range rejected") {
        CHECK_THROWS_AS(build_coupling(4, 1.0, 4), std::invalid_argument);
        CHECK_THROWS_AS(build_coupling(4, 1.0, -1), std::invalid_argument);
    }
}

TEST_CASE("A * Ainv = I across sizes and penalties") {
    for (std::size_t n : {std::size_t(2), std::size_t(8), std::size_t(64),
                          std::size_t(512)}) {
        for (double mu : {0.01, 1.0, 100.0}) {
            Coupling c = build_coupling(n, mu, static_cast<int>(n - 1));
            auto a = dense_coupling(n, mu);
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double s = 0.0;
                    long lo = i > 0 ? long(i) - 1 : 0;
                    long hi = i + 1 < n ? long(i) + 1 : long(n) - 1;
                    for (long t = lo; t <= hi; ++t) s += a[i * n + t] * c.inv(t, j);
                    worst = std::max(worst, std::fabs(s - (i == j ? 1.0 : 0.0)));
                }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("inverse entries decay away from the diagonal") {
    for (double mu : {0.01, 1.0, 100.0}) {
        Coupling c = build_coupling(32, mu, 31);
        for (std::size_t i = 0; i < 32; ++i)
            for (std::size_t j = 0; j + 1 < 32; ++j) {
                if (j + 1 <= i) continue;  // walk right of the diagonal only
                CHECK(std::fabs(c.inv(i, j + 1)) <= std::fabs(c.inv(i, j)) + 1e-15);
            }
    }
}

TEST_CASE("band truncation error shrinks with K and vanishes at N-1") {
    const std::size_t n = 16;
    Coupling full = build_coupling(n, 2.0, int(n - 1));
    double prev = -1.0;
    for (int k = 0; k < int(n); ++k) {
        Coupling c = build_coupling(n, 2.0, k);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double e = full.inv(i, j) - c.inv_banded(i, j);
                err += e * e;
            }
        err = std::sqrt(err);
        if (prev >= 0.0) CHECK(err <= prev + 1e-14);
        prev = err;
        if (k == int(n) - 1) CHECK(err == 0.0);
    }
}

TEST_CASE("objective values") {
    std::mt19937 rng(3);
    SUBCASE("identity weighting gives the Frobenius energy for any path") {
        Grid d = random_grid(rng, 10, 6);
        Coupling c = build_coupling(6, 0.0, 5);
        for (int t = 0; t < 5; ++t) {
            Path l = random_path(rng, 6, 4);
            CHECK(objective(d, l, c) ==
                  doctest::Approx(frobenius_sq(d)).epsilon(1e-12));
        }
    }
    SUBCASE("identical columns against dense evaluation") {
        Grid d(8, 5);
        std::vector<double> v(8);
        for (std::size_t i = 0; i < 8; ++i) v[i] = std::sin(0.7 * double(i)) + 0.2;
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t i = 0; i < 8; ++i) d.at(i, k) = v[i];
        Coupling c = build_coupling(5, 3.0, 4);
        double cc = dot(v.data(), v.data(), 8);
        double expect = 0.0;
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t k = 0; k < 5; ++k) expect += c.inv(j, k) * cc;
        Path zero(5, 0);
        CHECK(objective(d, zero, c) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("complement of the minimal model value") {
        for (int t = 0; t < 10; ++t) {
            Grid d = random_grid(rng, 6, 4);
            Path l = random_path(rng, 4, 2);
            double mu = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
            Coupling c = build_coupling(4, mu, 3);
            Grid u = dense_optimal_appearance(d, l, mu);
            double minval = dense_model_objective(d, l, u, mu);
            CHECK(objective(d, l, c) ==
                  doctest::Approx(frobenius_sq(d) - minval).epsilon(1e-10));
        }
    }
}

TEST_CASE("recover_appearance") {
    std::mt19937 rng(4);
    SUBCASE("mu=0 returns the aligned data") {
        Grid d = random_grid(rng, 8, 4);
        Path l = random_path(rng, 4, 3);
        ObjectEstimate est = recover_appearance(d, l, 0.0);
        Path neg(4);
        for (int k = 0; k < 4; ++k) neg[k] = -l[k];
        Grid aligned = shift_columns(d, neg);
        for (std::size_t i = 0; i < d.data.size(); ++i)
            CHECK(est.appearance.data[i] ==
                  doctest::Approx(aligned.data[i]).epsilon(1e-14));
        CHECK(est.path == l);
        CHECK(est.residual_energy == doctest::Approx(0.0).epsilon(1e-20));
    }
    SUBCASE("huge mu on identical shifted columns keeps the common column") {
        std::vector<double> v(16);
        for (std::size_t i = 0; i < 16; ++i) v[i] = std::cos(0.4 * double(i));
        Path l{0, 2, 3, 1, -1};
        Grid d(16, 5);
        for (std::size_t k = 0; k < 5; ++k) {
            auto s = shift_signal(v, l[k]);
            for (std::size_t i = 0; i < 16; ++i) d.at(i, k) = s[i];
        }
        ObjectEstimate est = recover_appearance(d, l, 1e6);
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t i = 0; i < 16; ++i)
                CHECK(est.appearance.at(i, k) == doctest::Approx(v[i]).epsilon(1e-6));
    }
    SUBCASE("huge mu pulls every column to the aligned column mean") {
        Grid d = random_grid(rng, 6, 4);
        Path l = random_path(rng, 4, 2);
        ObjectEstimate est = recover_appearance(d, l, 1e6);
        Path neg(4);
        for (int k = 0; k < 4; ++k) neg[k] = -l[k];
        Grid aligned = shift_columns(d, neg);
        for (std::size_t i = 0; i < 6; ++i) {
            double mean = 0.0;
            for (std::size_t k = 0; k < 4; ++k) mean += aligned.at(i, k);
            mean /= 4.0;
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(est.appearance.at(i, k) == doctest::Approx(mean).epsilon(1e-5));
        }
    }
    SUBCASE("recovered appearance beats random perturbations") {
        Grid d = random_grid(rng, 8, 5);
        Path l = random_path(rng, 5, 2);
        double mu = 2.5;
        ObjectEstimate est = recover_appearance(d, l, mu);
        double best = dense_model_objective(d, l, est.appearance, mu);
        CHECK(est.objective_value == doctest::Approx(best).epsilon(1e-10));
        std::normal_distribution<double> noise(0.0, 0.05);
        for (int t = 0; t < 100; ++t) {
            Grid pert = est.appearance;
            for (double& x : pert.data) x += noise(rng);
            CHECK(dense_model_objective(d, l, pert, mu) > best);
        }
    }
}

TEST_CASE("objective plus minimal model value equals the data energy") {
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        Grid d = random_grid(rng, 12, 6);
        Path l = random_path(rng, 6, 3);
        double mu = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
        Coupling c = build_coupling(6, mu, 5);
        ObjectEstimate est = recover_appearance(d, l, mu);
        double total = objective(d, l, c) + est.objective_value;
        CHECK(total == doctest::Approx(frobenius_sq(d)).epsilon(1e-8));
    }
}
