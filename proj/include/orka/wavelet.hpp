#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orka/grid.hpp"

namespace orka {

// Orthogonal filter pair. The highpass is the quadrature mirror of the
// lowpass: g[i] = (-1)^i h[len-1-i].
struct WaveletFilter {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

// Supported: "haar" (alias "db1"), "db2", "db6".
WaveletFilter wavelet_filter(const std::string& name);

// One analysis level of the periodized transform, even length m required.
// Analysis phase is fixed as low[i] = sum_t h[t] v[(2i + t) mod m]; the
// even-shift covariance used by the refinement only holds for a fixed phase.
void dwt_column(const double* v, std::size_t m, const WaveletFilter& f,
                double* low, double* high);
std::pair<std::vector<double>, std::vector<double>> dwt_column(
    const std::vector<double>& v, const WaveletFilter& f);

// Exact synthesis inverse of dwt_column.
void idwt_column(const double* low, const double* high, std::size_t half,
                 const WaveletFilter& f, double* out);
std::vector<double> idwt_column(const std::vector<double>& low,
                                const std::vector<double>& high,
                                const WaveletFilter& f);

// Column-wise one-level analysis / synthesis of a whole grid.
std::pair<Grid, Grid> dwt_grid(const Grid& d, const WaveletFilter& f);
Grid idwt_grid(const Grid& low, const Grid& high, const WaveletFilter& f);

// Column-wise synthesis with the detail half zeroed; doubles the row count.
Grid upsample_zero_highpass(const Grid& d, const WaveletFilter& f);

// Lowpass tower: level 0 is the input, level l has rows/2^l rows.
struct Pyramid {
    std::vector<Grid> levels;
    WaveletFilter filter;

    const Grid& level(std::size_t l) const { return levels[l]; }
    std::size_t depth() const { return levels.size() - 1; }
};

// Largest L such that rows stays even-divisible down to level L and the
// coarsest level still has at least filter-length rows.
int max_pyramid_levels(std::size_t rows, std::size_t filter_len);

// Thrown when a requested pyramid depth is infeasible for the data.
struct resolution_error : std::runtime_error {
    int max_feasible;
    resolution_error(const std::string& msg, int feasible)
        : std::runtime_error(msg), max_feasible(feasible) {}
};

Pyramid build_pyramid(const Grid& d, const WaveletFilter& f, int depth);

}  // namespace orka
