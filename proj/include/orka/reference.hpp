#pragma once

// Straightforward serial implementations of the data-parallel kernels.
// Kept as the ground truth the OpenMP versions are tested against; also
// used by the kernel benchmark.

#include "orka/coupling.hpp"
#include "orka/grid.hpp"
#include "orka/kgraph.hpp"
#include "orka/wavelet.hpp"

namespace orka::ref {

double objective(const Grid& d, const Path& lambda, const Coupling& c,
                 int band = -1);

CorrTable precompute_correlations(const Grid& d, long c, int k);

std::pair<Grid, Grid> dwt_grid(const Grid& d, const WaveletFilter& f);

Grid generate_gauss_serial(std::size_t rows, std::size_t cols, double alpha,
                           double shift_per_col, double center);

// Per-node trellis DP that decodes every window from scratch. Same tie
// rule as the production kernel, no incremental weight reuse.
TrellisSolution longest_path_naive(const KGraph& g);

}  // namespace orka::ref
