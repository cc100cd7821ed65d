#pragma once

#include <cstddef>
#include <vector>

#include "orka/grid.hpp"

namespace orka {

// Symmetric tridiagonal coupling matrix arising from eliminating the
// appearance out of the tracking objective:
//   diag = (1+mu, 1+2mu, ..., 1+2mu, 1+mu), off-diagonals = -mu.
// Holds the dense inverse and its K-bandlimited truncation.
struct Coupling {
    std::size_t n = 0;
    double mu = 0.0;
    int band = 0;
    std::vector<double> inverse;  // dense n*n, row-major

    double inv(std::size_t j, std::size_t k) const { return inverse[j * n + k]; }

    // Entry of the bandlimited inverse: zero outside |j - k| <= band.
    double inv_banded(std::size_t j, std::size_t k) const {
        long d = static_cast<long>(j) - static_cast<long>(k);
        return (d <= band && -d <= band) ? inverse[j * n + k] : 0.0;
    }

    double diag(std::size_t k) const {
        return (k == 0 || k + 1 == n) ? 1.0 + mu : 1.0 + 2.0 * mu;
    }

    std::vector<double> banded_copy() const;
    double banded_frobenius() const;
};

// Builds the coupling matrix for n measurements. The inverse is obtained
// from n tridiagonal solves against unit vectors; mu >= 0 keeps the system
// diagonally dominant so no pivoting is required.
Coupling build_coupling(std::size_t n, double mu, int band);

// Solves A x = rhs for the tridiagonal A(n, mu) above (Thomas elimination).
void solve_tridiagonal(std::size_t n, double mu, const double* rhs, double* x);
std::vector<double> solve_tridiagonal(std::size_t n, double mu,
                                      const std::vector<double>& rhs);

// The correlation functional sum_{j,k} Ainv_{jk} <S_{-l_j}(D_{:,j}), S_{-l_k}(D_{:,k})>.
// Maximizing it is equivalent to minimizing the tracking objective over paths;
// band < 0 uses the full inverse, otherwise only pairs |j-k| <= band contribute.
double objective(const Grid& d, const Path& lambda, const Coupling& c, int band = -1);

// Optimal appearance for a fixed path: each row of S_{-lambda}(D) solved
// against the tridiagonal coupling matrix.
ObjectEstimate recover_appearance(const Grid& d, const Path& lambda, double mu);

// Fidelity + weighted total-change penalty at an explicit (path, appearance) pair.
double model_objective(const Grid& d, const Path& lambda, const Grid& u, double mu);

}  // namespace orka
