#pragma once

#include <utility>

#include "orka/coupling.hpp"
#include "orka/grid.hpp"
#include "orka/wavelet.hpp"

namespace orka {

// Numerical evaluation of the coarse-to-fine error decomposition: the gap
// between the objective at a fine path and at its coarse surrogate splits
// into a shift-mismatch term and a highpass term, each with a computable
// upper bound.
struct BoundReport {
    double shift_gap = 0.0;       // |obj(D, lambda) - obj(D, 2*lambda')|
    double shift_bound = 0.0;     // sum |Ainv_jk| ||D_j|| ||D_k - S_{l'_k-l'_j}(D_k)||
    double highpass_gap = 0.0;    // |obj(D, 2*lambda') - obj(D_low, lambda')|
    double highpass_bound = 0.0;  // ||Ainv_banded||_F * ||D_high||_F^2
    double total_gap = 0.0;       // |obj(D, lambda) - obj(D_low, lambda')|
};

// Requires lambda = 2*lambda' + r with r in {-1, 0, 1}^N.
std::pair<double, double> bound_shift_mismatch(const Grid& d, const Path& lambda,
                                               const Path& lambda_half, int k,
                                               double mu);

std::pair<double, double> bound_highpass(const Grid& d, const Path& lambda_half,
                                         int k, double mu, const WaveletFilter& f);

BoundReport make_bound_report(const Grid& d, const Path& lambda,
                              const Path& lambda_half, int k, double mu,
                              const WaveletFilter& f);

}  // namespace orka
