#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orka/orka.hpp"
#include "orka/wavelet.hpp"

namespace orka {

// Exact dyadic rational num / 2^log2_den.
struct Dyadic {
    long num = 0;
    int log2_den = 0;
    double value() const { return static_cast<double>(num) / double(1L << log2_den); }
    bool operator==(const Dyadic&) const = default;
};

struct MultiresConfig {
    long c_prime = 1;             // Lipschitz constant at the original resolution
    int upsample_levels = 0;      // J: refinement beyond the data grid
    int k = 1;
    double mu = 1.0;
    WaveletFilter filter;
    std::optional<int> level_override;  // force pyramid depth L
    std::size_t node_budget_bytes = kDefaultNodeBudget;

    void validate() const;
};

// Pyramid depth so that unit per-level steps can realize every step of
// magnitude up to c_prime after J refinements:
// L = max(0, ceil(log2(c_prime + 2^-J)) - 1).
int select_levels(long c_prime, int upsample_levels);

struct LevelRecord {
    int level = 0;            // L .. -J; negative levels are upsampled grids
    Path path;                // accumulated path at this level's resolution
    Path update;              // per-level correction, steps in {-1, 0, 1}
    double value = 0.0;       // trellis objective of the level solve
    std::size_t nodes = 0;
};

struct RefinementTrace {
    std::vector<LevelRecord> levels;  // coarsest first
    Path final_path;                  // at scale 2^J
    int scale = 0;
    std::size_t total_nodes = 0;
    int step_bound_violations = 0;    // final steps above 2^J * C' (logged, kept)
};

struct MultiresResult {
    ObjectEstimate estimate;   // appearance at the finest (upsampled) grid
    RefinementTrace trace;
    Grid finest_grid;          // the grid the final path lives on
};

// Coarse-to-fine driver: solve at the coarsest pyramid level with C = 1,
// then repeatedly double the path, shift the next-finer grid by it and
// solve for a unit-step correction. Negative levels refine past the data
// resolution on zero-highpass upsampled grids.
MultiresResult solve_multires(const Grid& d, const MultiresConfig& cfg);

// Path at scale J as exact dyadic rationals.
std::vector<Dyadic> rescale_path(const Path& lambda, int scale);

}  // namespace orka
