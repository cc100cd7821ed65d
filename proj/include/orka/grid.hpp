#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace orka {

using Path = std::vector<long>;

// M x N matrix, column-major. Each column is one measurement; the row
// dimension is treated as circular by all shift operations.
struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(std::size_t m, std::size_t n) : rows(m), cols(n), data(m * n, 0.0) {}

    double& at(std::size_t i, std::size_t k) { return data[k * rows + i]; }
    double at(std::size_t i, std::size_t k) const { return data[k * rows + i]; }

    double* col(std::size_t k) { return data.data() + k * rows; }
    const double* col(std::size_t k) const { return data.data() + k * rows; }

    bool same_shape(const Grid& o) const { return rows == o.rows && cols == o.cols; }
};

// Cyclic downward rotation of a length-m signal by s samples:
// out[i] = in[(i - s) mod m].
void shift_signal(const double* in, double* out, std::size_t m, long s);
std::vector<double> shift_signal(const std::vector<double>& v, long s);

// Shifts column k of the grid cyclically downward by lambda[k].
Grid shift_columns(const Grid& d, const Path& lambda);

Grid add(const Grid& a, const Grid& b);
Grid sub(const Grid& a, const Grid& b);

double dot(const double* a, const double* b, std::size_t m);
double frobenius_sq(const Grid& d);

// Recovered object: appearance matrix plus the shift path that places it.
// The path lives on a grid 2^scale times finer than the source data.
struct ObjectEstimate {
    Grid appearance;
    Path path;
    int scale = 0;
    double objective_value = 0.0;   // fidelity + change penalty at (path, appearance)
    double residual_energy = 0.0;   // squared Frobenius norm of data - placed object
};

// Places the appearance by its path: S_lambda(U).
Grid place(const ObjectEstimate& est);

}  // namespace orka
