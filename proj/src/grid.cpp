#include "orka/grid.hpp"

#include <cmath>
#include <cstddef>

namespace orka {

namespace {
std::size_t wrap(long i, std::size_t m) {
    long r = i % static_cast<long>(m);
    if (r < 0) r += static_cast<long>(m);
    return static_cast<std::size_t>(r);
}
}  // namespace

void shift_signal(const double* in, double* out, std::size_t m, long s) {
    std::size_t src = wrap(-s, m);  // out[0] = in[(0 - s) mod m]
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = in[src];
        if (++src == m) src = 0;
    }
}

std::vector<double> shift_signal(const std::vector<double>& v, long s) {
    std::vector<double> out(v.size());
    shift_signal(v.data(), out.data(), v.size(), s);
    return out;
}

Grid shift_columns(const Grid& d, const Path& lambda) {
    if (lambda.size() != d.cols)
        throw std::invalid_argument("shift_columns: path length " +
                                    std::to_string(lambda.size()) +
                                    " does not match column count " +
                                    std::to_string(d.cols));
    Grid out(d.rows, d.cols);
    for (std::size_t k = 0; k < d.cols; ++k)
        shift_signal(d.col(k), out.col(k), d.rows, lambda[k]);
    return out;
}

Grid add(const Grid& a, const Grid& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
    Grid out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

Grid sub(const Grid& a, const Grid& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("sub: shape mismatch");
    Grid out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

double dot(const double* a, const double* b, std::size_t m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a[i] * b[i];
    return s;
}

double frobenius_sq(const Grid& d) {
    return dot(d.data.data(), d.data.data(), d.data.size());
}

Grid place(const ObjectEstimate& est) { return shift_columns(est.appearance, est.path); }

}  // namespace orka
