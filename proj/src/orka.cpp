#include "orka/orka.hpp"

#include <cmath>
#include <stdexcept>

namespace orka {

void OrkaConfig::validate() const {
    if (c < 0) throw std::invalid_argument("OrkaConfig: C must be >= 0");
    if (k < 1) throw std::invalid_argument("OrkaConfig: K must be >= 1");
    if (mu < 0.0) throw std::invalid_argument("OrkaConfig: mu must be >= 0");
    if (max_objects < 0) throw std::invalid_argument("OrkaConfig: max_objects must be >= 0");
    if (!(residual_threshold > 0.0 && residual_threshold < 1.0))
        throw std::invalid_argument("OrkaConfig: residual_threshold must be in (0, 1)");
}

SingleResult solve_single(const Grid& d, const OrkaConfig& cfg) {
    cfg.validate();
    int k = static_cast<int>(std::min<std::size_t>(cfg.k, d.cols - 1));
    KGraph g = build_graph(d, cfg.c, k, cfg.mu, cfg.node_budget_bytes);
    TrellisSolution path = longest_path(g);

    SingleResult r;
    r.estimate = recover_appearance(d, path.lambda, cfg.mu);
    r.surrogate_value = path.value;
    r.trellis_nodes = path.node_count;
    return r;
}

GreedyResult solve_greedy(const Grid& d, const OrkaConfig& cfg) {
    cfg.validate();
    GreedyResult out;
    out.residual = d;
    out.input_energy = frobenius_sq(d);
    double threshold = cfg.residual_threshold * out.input_energy;
    for (int i = 0; i < cfg.max_objects; ++i) {
        if (frobenius_sq(out.residual) <= threshold) break;
        SingleResult r = solve_single(out.residual, cfg);
        out.residual = sub(out.residual, place(r.estimate));
        out.objects.push_back(std::move(r.estimate));
    }
    return out;
}

}  // namespace orka
