#include "orka/wavelet.hpp"

#include <cmath>
#include <stdexcept>

namespace orka {

namespace {

// Daubechies scaling coefficients, sum sqrt(2). Correctness is enforced by
// the quadrature-mirror invariants in the test suite, not by eyeballing.
const std::vector<double> kHaar = {7.0710678118654752e-01, 7.0710678118654752e-01};

const std::vector<double> kDb2 = {
    4.82962913144534156e-01, 8.36516303737807942e-01,
    2.24143868042013389e-01, -1.29409522551260370e-01};

const std::vector<double> kDb6 = {
    1.11540743350109467e-01,  4.94623890398453059e-01,
    7.51133908021095364e-01,  3.15250351709197629e-01,
    -2.26264693965439828e-01, -1.29766867567261940e-01,
    9.75016055873230425e-02,  2.75228655303057269e-02,
    -3.15820393174860298e-02, 5.53842201161496126e-04,
    4.77725751094551076e-03,  -1.07730108530847959e-03};

WaveletFilter make(const std::string& name, const std::vector<double>& h) {
    WaveletFilter f;
    f.name = name;
    f.lowpass = h;
    f.highpass.resize(h.size());
    const std::size_t len = h.size();
    for (std::size_t i = 0; i < len; ++i)
        f.highpass[i] = ((i % 2) ? -1.0 : 1.0) * h[len - 1 - i];
    return f;
}

}  // namespace

WaveletFilter wavelet_filter(const std::string& name) {
    if (name == "haar" || name == "db1") return make("haar", kHaar);
    if (name == "db2") return make("db2", kDb2);
    if (name == "db6") return make("db6", kDb6);
    throw std::invalid_argument("unknown wavelet filter: " + name);
}

void dwt_column(const double* v, std::size_t m, const WaveletFilter& f,
                double* low, double* high) {
    if (m % 2 != 0) throw std::invalid_argument("dwt_column: length must be even");
    const std::size_t half = m / 2;
    const std::size_t len = f.lowpass.size();
    for (std::size_t i = 0; i < half; ++i) {
        double lo = 0.0, hi = 0.0;
        std::size_t idx = (2 * i) % m;
        for (std::size_t t = 0; t < len; ++t) {
            lo += f.lowpass[t] * v[idx];
            hi += f.highpass[t] * v[idx];
            if (++idx == m) idx = 0;
        }
        low[i] = lo;
        high[i] = hi;
    }
}

std::pair<std::vector<double>, std::vector<double>> dwt_column(
    const std::vector<double>& v, const WaveletFilter& f) {
    std::vector<double> low(v.size() / 2), high(v.size() / 2);
    dwt_column(v.data(), v.size(), f, low.data(), high.data());
    return {std::move(low), std::move(high)};
}

void idwt_column(const double* low, const double* high, std::size_t half,
                 const WaveletFilter& f, double* out) {
    const std::size_t m = 2 * half;
    const std::size_t len = f.lowpass.size();
    for (std::size_t i = 0; i < m; ++i) out[i] = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t idx = (2 * i) % m;
        for (std::size_t t = 0; t < len; ++t) {
            out[idx] += f.lowpass[t] * low[i] + f.highpass[t] * high[i];
            if (++idx == m) idx = 0;
        }
    }
}

std::vector<double> idwt_column(const std::vector<double>& low,
                                const std::vector<double>& high,
                                const WaveletFilter& f) {
    if (low.size() != high.size())
        throw std::invalid_argument("idwt_column: low/high length mismatch");
    std::vector<double> out(2 * low.size());
    idwt_column(low.data(), high.data(), low.size(), f, out.data());
    return out;
}

std::pair<Grid, Grid> dwt_grid(const Grid& d, const WaveletFilter& f) {
    if (d.rows % 2 != 0) throw std::invalid_argument("dwt_grid: row count must be even");
    Grid low(d.rows / 2, d.cols), high(d.rows / 2, d.cols);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < d.cols; ++k)
        dwt_column(d.col(k), d.rows, f, low.col(k), high.col(k));
    return {std::move(low), std::move(high)};
}

Grid idwt_grid(const Grid& low, const Grid& high, const WaveletFilter& f) {
    if (!low.same_shape(high)) throw std::invalid_argument("idwt_grid: shape mismatch");
    Grid out(2 * low.rows, low.cols);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < low.cols; ++k)
        idwt_column(low.col(k), high.col(k), low.rows, f, out.col(k));
    return out;
}

Grid upsample_zero_highpass(const Grid& d, const WaveletFilter& f) {
    Grid zero(d.rows, d.cols);
    return idwt_grid(d, zero, f);
}

int max_pyramid_levels(std::size_t rows, std::size_t filter_len) {
    int l = 0;
    while (rows % 2 == 0 && rows / 2 >= filter_len) {
        rows /= 2;
        ++l;
    }
    return l;
}

Pyramid build_pyramid(const Grid& d, const WaveletFilter& f, int depth) {
    if (depth < 0) throw std::invalid_argument("build_pyramid: negative depth");
    std::size_t rows = d.rows;
    for (int l = 0; l < depth; ++l) {
        if (rows % 2 != 0)
            throw resolution_error(
                "build_pyramid: rows not divisible by 2^" + std::to_string(depth) +
                    "; maximal feasible depth is " +
                    std::to_string(max_pyramid_levels(d.rows, f.lowpass.size())),
                max_pyramid_levels(d.rows, f.lowpass.size()));
        rows /= 2;
    }
    Pyramid p;
    p.filter = f;
    p.levels.reserve(depth + 1);
    p.levels.push_back(d);
    for (int l = 0; l < depth; ++l) {
        auto [low, high] = dwt_grid(p.levels.back(), f);
        (void)high;
        p.levels.push_back(std::move(low));
    }
    return p;
}

}  // namespace orka
