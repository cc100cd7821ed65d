#include "orka/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace orka {

void solve_tridiagonal(std::size_t n, double mu, const double* rhs, double* x) {
    if (mu == 0.0) {
        for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i];
        return;
    }
    // diag (1+mu, 1+2mu, ..., 1+2mu, 1+mu), off-diagonals -mu
    std::vector<double> cp(n), dp(n);
    double b0 = 1.0 + mu;
    cp[0] = -mu / b0;
    dp[0] = rhs[0] / b0;
    for (std::size_t i = 1; i < n; ++i) {
        double b = (i + 1 == n) ? 1.0 + mu : 1.0 + 2.0 * mu;
        double denom = b - (-mu) * cp[i - 1];
        cp[i] = -mu / denom;
        dp[i] = (rhs[i] - (-mu) * dp[i - 1]) / denom;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
}

std::vector<double> solve_tridiagonal(std::size_t n, double mu,
                                      const std::vector<double>& rhs) {
    std::vector<double> x(n);
    solve_tridiagonal(n, mu, rhs.data(), x.data());
    return x;
}

Coupling build_coupling(std::size_t n, double mu, int band) {
    if (n < 2) throw std::invalid_argument("build_coupling: need at least 2 measurements");
    if (mu < 0.0) throw std::invalid_argument("build_coupling: mu must be nonnegative");
    if (band < 0 || static_cast<std::size_t>(band) > n - 1)
        throw std::invalid_argument("build_coupling: band must be in [0, " +
                                    std::to_string(n - 1) + "]");
    Coupling c;
    c.n = n;
    c.mu = mu;
    c.band = band;
    c.inverse.assign(n * n, 0.0);
    std::vector<double> e(n, 0.0), col(n);
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = 1.0;
        solve_tridiagonal(n, mu, e.data(), col.data());
        e[k] = 0.0;
        for (std::size_t j = 0; j < n; ++j) c.inverse[j * n + k] = col[j];
    }
    return c;
}

std::vector<double> Coupling::banded_copy() const {
    std::vector<double> out(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t lo = j >= static_cast<std::size_t>(band) ? j - band : 0;
        std::size_t hi = std::min(n - 1, j + band);
        for (std::size_t k = lo; k <= hi; ++k) out[j * n + k] = inverse[j * n + k];
    }
    return out;
}

double Coupling::banded_frobenius() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t lo = j >= static_cast<std::size_t>(band) ? j - band : 0;
        std::size_t hi = std::min(n - 1, j + band);
        for (std::size_t k = lo; k <= hi; ++k) {
            double v = inverse[j * n + k];
            s += v * v;
        }
    }
    return std::sqrt(s);
}

double objective(const Grid& d, const Path& lambda, const Coupling& c, int band) {
    if (lambda.size() != d.cols)
        throw std::invalid_argument("objective: path length mismatch");
    if (c.n != d.cols) throw std::invalid_argument("objective: coupling size mismatch");
    const std::size_t n = d.cols;
    Path neg(n);
    for (std::size_t k = 0; k < n; ++k) neg[k] = -lambda[k];
    Grid s = shift_columns(d, neg);

    long b = band < 0 ? static_cast<long>(n) : band;
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
    for (std::size_t j = 0; j < n; ++j) {
        double row = c.inv(j, j) * dot(s.col(j), s.col(j), s.rows);
        std::size_t hi = std::min(n - 1, j + static_cast<std::size_t>(b));
        for (std::size_t k = j + 1; k <= hi; ++k)
            row += 2.0 * c.inv(j, k) * dot(s.col(j), s.col(k), s.rows);
        total += row;
    }
    return total;
}

ObjectEstimate recover_appearance(const Grid& d, const Path& lambda, double mu) {
    if (lambda.size() != d.cols)
        throw std::invalid_argument("recover_appearance: path length mismatch");
    const std::size_t m = d.rows, n = d.cols;
    Path neg(n);
    for (std::size_t k = 0; k < n; ++k) neg[k] = -lambda[k];
    Grid s = shift_columns(d, neg);

    ObjectEstimate est;
    est.appearance = Grid(m, n);
    est.path = lambda;
#pragma omp parallel
    {
        std::vector<double> rhs(n), x(n);
#pragma omp for
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < n; ++k) rhs[k] = s.at(i, k);
            solve_tridiagonal(n, mu, rhs.data(), x.data());
            for (std::size_t k = 0; k < n; ++k) est.appearance.at(i, k) = x[k];
        }
    }
    Grid placed = shift_columns(est.appearance, lambda);
    est.residual_energy = frobenius_sq(sub(d, placed));
    est.objective_value = model_objective(d, lambda, est.appearance, mu);
    return est;
}

double model_objective(const Grid& d, const Path& lambda, const Grid& u, double mu) {
    Grid placed = shift_columns(u, lambda);
    double value = frobenius_sq(sub(d, placed));
    for (std::size_t k = 0; k + 1 < u.cols; ++k) {
        double change = 0.0;
        for (std::size_t i = 0; i < u.rows; ++i) {
            double diff = u.at(i, k) - u.at(i, k + 1);
            change += diff * diff;
        }
        value += mu * change;
    }
    return value;
}

}  // namespace orka
