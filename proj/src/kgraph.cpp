#include "orka/kgraph.hpp"

#include <fftw3.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <string>

namespace orka {

namespace {

// (2C+1)^e with overflow guard.
std::size_t pow_checked(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / base)
            throw resource_error("trellis size overflows 64-bit addressing");
        r *= base;
    }
    return r;
}

// Backpointers hold one dropped step in [0, 2C], bit-packed so that deep
// narrow trellises (C = 1, large K) stay inside the node budget.
int bp_bits(std::size_t base) {
    int bits = 1;
    while ((std::size_t(1) << bits) < base) ++bits;
    return bits;
}

std::size_t bp_entries_per_byte(std::size_t base) {
    return std::size_t(8 / bp_bits(base));
}

std::size_t bp_layer_bytes(std::size_t entries, std::size_t base) {
    const std::size_t epb = bp_entries_per_byte(base);
    return (entries + epb - 1) / epb;
}

}  // namespace

CorrTable precompute_correlations(const Grid& d, long c, int k) {
    if (c < 0) throw std::invalid_argument("precompute_correlations: C must be >= 0");
    if (k < 1) throw std::invalid_argument("precompute_correlations: K must be >= 1");
    CorrTable t;
    t.n = d.cols;
    t.c = c;
    t.k = k;
    t.by_band.resize(k);
    const std::size_t m = d.rows;
    for (int band = 1; band <= k; ++band) {
        if (static_cast<std::size_t>(band) >= d.cols) break;
        const long width = 2 * band * c + 1;
        t.by_band[band - 1].assign((d.cols - band) * width, 0.0);
    }
    for (int band = 1; band <= k && static_cast<std::size_t>(band) < d.cols; ++band) {
        const long width = 2 * band * c + 1;
        double* out = t.by_band[band - 1].data();
        const long npairs = static_cast<long>(d.cols) - band;
#pragma omp parallel for schedule(static)
        for (long j = 0; j < npairs; ++j) {
            const double* a = d.col(j);
            const double* b = d.col(j + band);
            for (long lag = -band * c; lag <= band * c; ++lag) {
                // <D_j, S_lag(D_{j+band})> with the cyclic row dimension
                std::size_t src = ((-lag) % static_cast<long>(m) + m) % m;
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    s += a[i] * b[src];
                    if (++src == m) src = 0;
                }
                out[j * width + lag + band * c] = s;
            }
        }
    }
    return t;
}

std::vector<double> cyclic_correlation_fft(const std::vector<double>& u,
                                           const std::vector<double>& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("cyclic_correlation_fft: length mismatch");
    const std::size_t m = u.size();
    const std::size_t mc = m / 2 + 1;
    std::vector<std::complex<double>> fu(mc), fv(mc);
    std::vector<double> in(u), out(m);
    fftw_plan pf = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.data(),
                                        reinterpret_cast<fftw_complex*>(fu.data()),
                                        FFTW_ESTIMATE);
    fftw_execute(pf);
    std::memcpy(in.data(), v.data(), m * sizeof(double));
    fftw_execute_dft_r2c(pf, in.data(), reinterpret_cast<fftw_complex*>(fv.data()));
    fftw_destroy_plan(pf);
    // r[lag] = <u, S_lag(v)> = IFFT(FFT(u) * conj(FFT(v)))
    for (std::size_t i = 0; i < mc; ++i) fu[i] *= std::conj(fv[i]);
    fftw_plan pb = fftw_plan_dft_c2r_1d(static_cast<int>(m),
                                        reinterpret_cast<fftw_complex*>(fu.data()),
                                        out.data(), FFTW_ESTIMATE);
    fftw_execute(pb);
    fftw_destroy_plan(pb);
    for (double& x : out) x /= static_cast<double>(m);
    return out;
}

KGraph build_graph(const Grid& d, long c, int k, double mu,
                   std::size_t node_budget_bytes) {
    if (d.cols < 2) throw std::invalid_argument("build_graph: need at least 2 columns");
    if (c < 0) throw std::invalid_argument("build_graph: C must be >= 0");
    if (k < 1 || static_cast<std::size_t>(k) > d.cols - 1)
        throw std::invalid_argument("build_graph: K must be in [1, N-1]");

    const std::size_t n = d.cols;
    const std::size_t base = static_cast<std::size_t>(2 * c + 1);
    const int wmax = static_cast<int>(std::min<std::size_t>(k, n - 1));
    const std::size_t full = pow_checked(base, wmax);
    const std::size_t half = pow_checked(base, wmax > 0 ? wmax - 1 : 0);
    std::size_t bp_layers = n - 1 > static_cast<std::size_t>(k) ? n - 1 - k : 0;
    std::size_t bytes =
        2 * sizeof(double) * full + bp_layers * bp_layer_bytes(half, base);
    if (bytes > node_budget_bytes)
        throw resource_error(
            "trellis storage would need " + std::to_string(bytes) +
            " bytes, above the " + std::to_string(node_budget_bytes) +
            " byte budget; run the multiresolution driver, which keeps C = 1 per level");

    KGraph g;
    g.n = n;
    g.c = c;
    g.k = k;
    g.mu = mu;
    g.corr = precompute_correlations(d, c, k);
    g.coupling = build_coupling(n, mu, k);
    g.diag_const = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        g.diag_const += g.coupling.inv(j, j) * dot(d.col(j), d.col(j), d.rows);
    g.node_count = 0;
    for (std::size_t layer = 0; layer < n; ++layer)
        g.node_count += pow_checked(base, static_cast<int>(
                                              std::min<std::size_t>(layer, k)));
    g.full_layer_nodes = full;
    return g;
}

namespace {

// Decodes digit d (1 = newest / most significant) of a window index.
inline long window_digit(std::size_t idx, int d, int w, std::size_t base) {
    std::size_t p = 1;
    for (int e = 0; e < w - d; ++e) p *= base;
    return static_cast<long>((idx / p) % base);
}

// Lexicographic comparison by step preference rank, newest digit first.
bool rank_less(std::size_t a, std::size_t b, int w, std::size_t base, long c) {
    for (int d = 1; d <= w; ++d) {
        long ra = step_rank(window_digit(a, d, w, base) - c);
        long rb = step_rank(window_digit(b, d, w, base) - c);
        if (ra != rb) return ra < rb;
    }
    return false;
}

}  // namespace

TrellisSolution longest_path(const KGraph& g) {
    const std::size_t n = g.n;
    const long c = g.c;
    const int k = g.k;
    const std::size_t base = static_cast<std::size_t>(2 * c + 1);
    const int wmax = static_cast<int>(std::min<std::size_t>(k, n - 1));

    std::vector<std::size_t> powb(wmax + 1);
    powb[0] = 1;
    for (int e = 1; e <= wmax; ++e) powb[e] = powb[e - 1] * base;

    // Candidate steps ordered by preference rank; first strict max wins.
    std::vector<long> ranked(base);
    for (std::size_t i = 0; i < base; ++i) ranked[i] = static_cast<long>(i) - c;
    std::sort(ranked.begin(), ranked.end(),
              [](long a, long b) { return step_rank(a) < step_rank(b); });

    std::vector<double> prev(1, 0.0), cur;
    std::vector<double> bestv;
    std::vector<std::vector<std::uint8_t>> bp(n);  // per-base dropped step, full layers

    for (std::size_t layer = 1; layer < n; ++layer) {
        const int w = static_cast<int>(std::min<std::size_t>(layer, k));
        const bool full = layer >= static_cast<std::size_t>(k) + 1;
        const std::size_t size = powb[w];
        const std::size_t nprefix = powb[w - 1];
        cur.assign(size, 0.0);

        if (full) {
            // Best predecessor depends only on the shared K-1 steps.
            bestv.assign(powb[k - 1], 0.0);
            const std::size_t nb = powb[k - 1];
            const int bits = bp_bits(base);
            const std::size_t epb = bp_entries_per_byte(base);
            bp[layer].assign(bp_layer_bytes(nb, base), 0);
            const long nbytes = static_cast<long>(bp[layer].size());
            // one packed byte per iteration keeps the writes race-free
#pragma omp parallel for schedule(static)
            for (long q = 0; q < nbytes; ++q) {
                std::uint8_t packed = 0;
                for (std::size_t s = 0; s < epb; ++s) {
                    std::size_t b = static_cast<std::size_t>(q) * epb + s;
                    if (b >= nb) break;
                    double bv = -std::numeric_limits<double>::infinity();
                    std::uint8_t bi = 0;
                    for (std::size_t r = 0; r < base; ++r) {
                        std::size_t dig = static_cast<std::size_t>(ranked[r] + c);
                        double v = prev[b * base + dig];
                        if (v > bv) {
                            bv = v;
                            bi = static_cast<std::uint8_t>(dig);
                        }
                    }
                    bestv[b] = bv;
                    packed |= static_cast<std::uint8_t>(bi << (s * bits));
                }
                bp[layer][q] = packed;
            }
        }

        // Per-layer correlation rows and coupling weights for pair distance d.
        std::vector<const double*> rowc(w + 1);
        std::vector<double> coef(w + 1);
        for (int d = 1; d <= w; ++d) {
            rowc[d] = g.corr.row_center(layer - d, d);
            coef[d] = 2.0 * g.coupling.inv(layer - d, layer);
        }
        const std::vector<double>& src = full ? bestv : prev;
        // pred index = idx mod base^{w-1}; modulus for the prefix part
        const std::size_t pmod = w >= 2 ? powb[w - 2] : 1;
        const bool has_pred_digits = w >= 2;

#pragma omp parallel
        {
            std::vector<long> dig(w, 0);       // prefix digits, d = 1..w-1
            std::vector<long> msum(w, 0);      // cumulative shift, msum[d]
            std::vector<double> partial(w, 0.0);
            int nth = 1, tid = 0;
#ifdef _OPENMP
            nth = omp_get_num_threads();
            tid = omp_get_thread_num();
#endif
            const std::size_t chunk = (nprefix + nth - 1) / nth;
            const std::size_t plo = std::min(nprefix, static_cast<std::size_t>(tid) * chunk);
            const std::size_t phi = std::min(nprefix, plo + chunk);

            auto recompute = [&](int from) {
                for (int d = from; d <= w - 1; ++d) {
                    msum[d] = msum[d - 1] - dig[d];
                    partial[d] = partial[d - 1] + coef[d] * rowc[d][msum[d]];
                }
            };
            if (plo < phi && w >= 2) {
                for (int d = 1; d <= w - 1; ++d)
                    dig[d] = static_cast<long>((plo / powb[w - 1 - d]) % base) - c;
                recompute(1);
            }
            for (std::size_t p = plo; p < phi; ++p) {
                if (p != plo && w >= 2) {
                    int d = w - 1;
                    while (true) {
                        if (++dig[d] <= c) break;
                        dig[d] = -c;
                        --d;
                    }
                    recompute(d);
                }
                const double head = w >= 1 ? partial[w - 1] : 0.0;
                const long mhead = w >= 1 ? msum[w - 1] : 0;
                const double* row = rowc[w];
                const double cw = coef[w];
                const std::size_t predp = has_pred_digits ? (p % pmod) * base : 0;
                double* out = cur.data() + p * base;
                const double* in = src.data() + predp;
                for (std::size_t bo = 0; bo < base; ++bo) {
                    long step = static_cast<long>(bo) - c;
                    out[bo] = head + cw * row[mhead - step] + in[has_pred_digits ? bo : 0];
                }
            }
        }
        std::swap(prev, cur);
    }

    // Final layer: strict max, ties by preference-rank lexicographic order.
    const int wf = static_cast<int>(std::min<std::size_t>(n - 1, k));
    std::size_t best_idx = 0;
    double best_val = prev[0];
    for (std::size_t idx = 1; idx < prev.size(); ++idx) {
        if (prev[idx] > best_val ||
            (prev[idx] == best_val && rank_less(idx, best_idx, wf, base, c))) {
            best_val = prev[idx];
            best_idx = idx;
        }
    }

    // Backtrack: the final window gives the last wf steps, stored dropped
    // steps give the rest.
    std::vector<long> steps(n - 1, 0);
    for (int d = 1; d <= wf; ++d)
        steps[n - 1 - d] = window_digit(best_idx, d, wf, base) - c;
    std::size_t curidx = best_idx;
    const int bits = bp_bits(base);
    const std::size_t epb = bp_entries_per_byte(base);
    const std::uint8_t mask = static_cast<std::uint8_t>((1u << bits) - 1);
    for (std::size_t layer = n - 1; layer >= static_cast<std::size_t>(k) + 1; --layer) {
        std::size_t b = curidx % powb[k - 1];
        std::uint8_t dropped =
            static_cast<std::uint8_t>(bp[layer][b / epb] >> ((b % epb) * bits)) & mask;
        steps[layer - 1 - k] = static_cast<long>(dropped) - c;
        curidx = b * base + dropped;
        if (layer == static_cast<std::size_t>(k) + 1) break;
    }

    TrellisSolution sol;
    sol.lambda.assign(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) sol.lambda[i + 1] = sol.lambda[i] + steps[i];
    sol.value = best_val + g.diag_const;
    sol.node_count = g.node_count;
    return sol;
}

double path_weight(const KGraph& g, const Path& lambda) {
    if (lambda.size() != g.n) throw std::invalid_argument("path_weight: length mismatch");
    double total = g.diag_const;
    for (std::size_t layer = 1; layer < g.n; ++layer) {
        const int w = static_cast<int>(std::min<std::size_t>(layer, g.k));
        for (int d = 1; d <= w; ++d) {
            long m = lambda[layer - d] - lambda[layer];
            if (std::abs(m) > static_cast<long>(d) * g.c)
                throw std::invalid_argument("path_weight: path violates the step bound");
            total += 2.0 * g.coupling.inv(layer - d, layer) *
                     g.corr.get(layer - d, d, m);
        }
    }
    return total;
}

BruteForceSolution brute_force_path(const Grid& d, long c, int k, double mu,
                                    std::size_t max_candidates) {
    const std::size_t n = d.cols;
    const std::size_t base = static_cast<std::size_t>(2 * c + 1);
    long double count = std::pow(static_cast<long double>(base),
                                 static_cast<long double>(n - 1));
    if (count > static_cast<long double>(max_candidates))
        throw resource_error("brute_force_path: instance too large to enumerate");

    KGraph g = build_graph(d, c, k, mu);

    std::vector<long> ranked(base);
    for (std::size_t i = 0; i < base; ++i) ranked[i] = static_cast<long>(i) - c;
    std::sort(ranked.begin(), ranked.end(),
              [](long a, long b) { return step_rank(a) < step_rank(b); });

    BruteForceSolution sol;
    sol.value = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> odo(n - 1, 0);  // indices into the ranked step order
    Path lambda(n, 0);
    while (true) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            lambda[i + 1] = lambda[i] + ranked[odo[i]];
        double v = path_weight(g, lambda);
        ++sol.candidates;
        if (v > sol.value) {
            sol.value = v;
            sol.lambda = lambda;
        }
        bool advanced = false;
        for (std::size_t i = n - 1; i-- > 0;) {
            if (++odo[i] < base) {
                advanced = true;
                break;
            }
            odo[i] = 0;
        }
        if (!advanced) return sol;
    }
}

}  // namespace orka
