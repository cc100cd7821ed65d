#include "orka/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orka::ref {

double objective(const Grid& d, const Path& lambda, const Coupling& c, int band) {
    const std::size_t n = d.cols;
    Path neg(n);
    for (std::size_t k = 0; k < n; ++k) neg[k] = -lambda[k];
    Grid s = shift_columns(d, neg);
    long b = band < 0 ? static_cast<long>(n) : band;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            long dd = static_cast<long>(j) - static_cast<long>(k);
            if (dd > b || -dd > b) continue;
            total += c.inv(j, k) * dot(s.col(j), s.col(k), s.rows);
        }
    return total;
}

CorrTable precompute_correlations(const Grid& d, long c, int k) {
    CorrTable t;
    t.n = d.cols;
    t.c = c;
    t.k = k;
    t.by_band.resize(k);
    const long m = static_cast<long>(d.rows);
    for (int band = 1; band <= k && static_cast<std::size_t>(band) < d.cols; ++band) {
        const long width = 2 * band * c + 1;
        t.by_band[band - 1].assign((d.cols - band) * width, 0.0);
        for (std::size_t j = 0; j + band < d.cols; ++j) {
            for (long lag = -band * c; lag <= band * c; ++lag) {
                double s = 0.0;
                for (long i = 0; i < m; ++i)
                    s += d.at(i, j) * d.at(((i - lag) % m + m) % m, j + band);
                t.by_band[band - 1][j * width + lag + band * c] = s;
            }
        }
    }
    return t;
}

std::pair<Grid, Grid> dwt_grid(const Grid& d, const WaveletFilter& f) {
    Grid low(d.rows / 2, d.cols), high(d.rows / 2, d.cols);
    for (std::size_t k = 0; k < d.cols; ++k)
        dwt_column(d.col(k), d.rows, f, low.col(k), high.col(k));
    return {std::move(low), std::move(high)};
}

Grid generate_gauss_serial(std::size_t rows, std::size_t cols, double alpha,
                           double shift_per_col, double center) {
    Grid d(rows, cols);
    const double m = static_cast<double>(rows);
    for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t j = 0; j < rows; ++j) {
            double x = std::fmod(static_cast<double>(j + 1) -
                                     shift_per_col * static_cast<double>(k + 1),
                                 m);
            if (x < 0.0) x += m;
            double t = (x - center) / alpha;
            d.at(j, k) = std::exp(-t * t);
        }
    return d;
}

namespace {

struct Node {
    double value;
    std::size_t pred;
};

long digit_of(std::size_t idx, int d, int w, std::size_t base) {
    std::size_t p = 1;
    for (int e = 0; e < w - d; ++e) p *= base;
    return static_cast<long>((idx / p) % base);
}

}  // namespace

TrellisSolution longest_path_naive(const KGraph& g) {
    const std::size_t n = g.n;
    const long c = g.c;
    const int k = g.k;
    const std::size_t base = static_cast<std::size_t>(2 * c + 1);

    std::vector<long> ranked(base);
    for (std::size_t i = 0; i < base; ++i) ranked[i] = static_cast<long>(i) - c;
    std::sort(ranked.begin(), ranked.end(),
              [](long a, long b) { return step_rank(a) < step_rank(b); });

    auto powi = [&](int e) {
        std::size_t r = 1;
        while (e-- > 0) r *= base;
        return r;
    };

    std::vector<std::vector<Node>> layers(n);
    layers[0] = {{0.0, 0}};
    for (std::size_t layer = 1; layer < n; ++layer) {
        const int w = static_cast<int>(std::min<std::size_t>(layer, k));
        const int wp = static_cast<int>(std::min<std::size_t>(layer - 1, k));
        layers[layer].assign(powi(w), {0.0, 0});
        for (std::size_t idx = 0; idx < layers[layer].size(); ++idx) {
            // in-edge weight from the window alone
            double inw = 0.0;
            long msum = 0;
            for (int d = 1; d <= w; ++d) {
                msum -= digit_of(idx, d, w, base) - c;
                inw += 2.0 * g.coupling.inv(layer - d, layer) *
                       g.corr.get(layer - d, d, msum);
            }
            // candidate predecessors: windows whose K-1 newest steps match
            double best = -std::numeric_limits<double>::infinity();
            std::size_t bestp = 0;
            (void)wp;
            if (layer - 1 >= static_cast<std::size_t>(k)) {
                // predecessor drops its oldest step
                std::size_t shared = idx % powi(w - 1);
                for (std::size_t r = 0; r < base; ++r) {
                    std::size_t cand = shared * base +
                                       static_cast<std::size_t>(ranked[r] + c);
                    if (layers[layer - 1][cand].value > best) {
                        best = layers[layer - 1][cand].value;
                        bestp = cand;
                    }
                }
            } else {
                // ramp-up: the window keeps the whole predecessor window
                bestp = idx % powi(w - 1);
                best = layers[layer - 1][bestp].value;
            }
            layers[layer][idx] = {inw + best, bestp};
        }
    }

    const int wf = static_cast<int>(std::min<std::size_t>(n - 1, k));
    std::size_t best_idx = 0;
    for (std::size_t idx = 1; idx < layers[n - 1].size(); ++idx) {
        if (layers[n - 1][idx].value > layers[n - 1][best_idx].value) best_idx = idx;
        else if (layers[n - 1][idx].value == layers[n - 1][best_idx].value) {
            for (int d = 1; d <= wf; ++d) {
                long ra = step_rank(digit_of(idx, d, wf, base) - c);
                long rb = step_rank(digit_of(best_idx, d, wf, base) - c);
                if (ra != rb) {
                    if (ra < rb) best_idx = idx;
                    break;
                }
            }
        }
    }

    // walk predecessors, reading the newest step of each visited window
    std::vector<long> steps(n - 1, 0);
    std::size_t cur = best_idx;
    for (std::size_t layer = n - 1; layer >= 1; --layer) {
        const int w = static_cast<int>(std::min<std::size_t>(layer, k));
        steps[layer - 1] = digit_of(cur, 1, w, base) - c;
        cur = layers[layer][cur].pred;
    }

    TrellisSolution sol;
    sol.lambda.assign(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) sol.lambda[i + 1] = sol.lambda[i] + steps[i];
    sol.value = layers[n - 1][best_idx].value + g.diag_const;
    sol.node_count = g.node_count;
    return sol;
}

}  // namespace orka::ref
