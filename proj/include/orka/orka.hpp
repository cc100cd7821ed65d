#pragma once

#include <cstddef>
#include <vector>

#include "orka/grid.hpp"
#include "orka/kgraph.hpp"

namespace orka {

struct OrkaConfig {
    long c = 1;                        // Lipschitz constant, samples per step
    int k = 1;                         // band / approximation order
    double mu = 1.0;                   // change penalty
    int max_objects = 1;
    double residual_threshold = 0.01;  // fraction of the input energy
    std::size_t node_budget_bytes = kDefaultNodeBudget;

    void validate() const;
};

struct SingleResult {
    ObjectEstimate estimate;
    double surrogate_value = 0.0;  // bandlimited trellis objective at the path
    std::size_t trellis_nodes = 0;
};

// One object at one resolution: longest trellis path, then the optimal
// appearance for that path.
SingleResult solve_single(const Grid& d, const OrkaConfig& cfg);

struct GreedyResult {
    std::vector<ObjectEstimate> objects;
    Grid residual;
    double input_energy = 0.0;
};

// Extracts objects one at a time, subtracting each placed object from the
// running residual, until the residual energy falls under the threshold or
// max_objects is reached.
GreedyResult solve_greedy(const Grid& d, const OrkaConfig& cfg);

}  // namespace orka
