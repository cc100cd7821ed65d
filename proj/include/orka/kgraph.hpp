#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "orka/coupling.hpp"
#include "orka/grid.hpp"

namespace orka {

// Circular cross-correlations c_{j,j+d}(m) = <D_{:,j}, S_m(D_{:,j+d})> for
// 1 <= d <= K and |m| <= d*C -- every lag the trellis can query.
struct CorrTable {
    std::size_t n = 0;
    long c = 0;
    int k = 0;
    // by_band[d-1] has (n - d) rows of width 2*d*C + 1, lag m at offset m + d*C.
    std::vector<std::vector<double>> by_band;

    const double* row_center(std::size_t j, int d) const {
        long w = 2 * static_cast<long>(d) * c + 1;
        return by_band[d - 1].data() + static_cast<std::size_t>(j) * w + d * c;
    }
    double get(std::size_t j, int d, long m) const { return row_center(j, d)[m]; }
};

CorrTable precompute_correlations(const Grid& d, long c, int k);

// All m cyclic lags <u, S_m(v)> via FFT; the independent fast route checked
// against the direct sums in precompute_correlations.
std::vector<double> cyclic_correlation_fft(const std::vector<double>& u,
                                           const std::vector<double>& v);

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrellisSolution {
    Path lambda;           // gauge lambda[0] = 0
    double value = 0.0;    // bandlimited objective including the diagonal constant
    std::size_t node_count = 0;
};

// Layered trellis over windows of the K most recent path steps, each step in
// [-C, C]. Every source-to-sink path weight equals the bandlimited objective
// of the path it encodes, up to the path-independent diagonal constant which
// is kept separately.
struct KGraph {
    std::size_t n = 0;
    long c = 0;
    int k = 0;
    double mu = 0.0;
    CorrTable corr;
    Coupling coupling;
    double diag_const = 0.0;       // sum_k Ainv_kk * ||D_{:,k}||^2
    std::size_t node_count = 0;    // sum over layers of (2C+1)^min(layer, K)
    std::size_t full_layer_nodes = 0;
};

constexpr std::size_t kDefaultNodeBudget = std::size_t(2) << 30;  // 2 GiB

KGraph build_graph(const Grid& d, long c, int k, double mu,
                   std::size_t node_budget_bytes = kDefaultNodeBudget);

// Longest-path dynamic programming over the trellis layers. Ties prefer the
// step with smaller magnitude, then the smaller (more negative) step.
TrellisSolution longest_path(const KGraph& g);

struct BruteForceSolution {
    Path lambda;
    double value = 0.0;
    std::size_t candidates = 0;
};

// Exact maximizer by enumerating all (2C+1)^(N-1) admissible paths.
BruteForceSolution brute_force_path(const Grid& d, long c, int k, double mu,
                                    std::size_t max_candidates = 10'000'000);

// Trellis-weight evaluation of one explicit path (edge-weight sum plus the
// diagonal constant); agrees with objective(d, lambda, coupling, K).
double path_weight(const KGraph& g, const Path& lambda);

// Preference rank used by every tie rule: 0, -1, +1, -2, +2, ...
inline long step_rank(long step) {
    return 2 * std::abs(step) - (step < 0 ? 1 : 0);
}

}  // namespace orka
