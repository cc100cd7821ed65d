#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orka/diagnostics.hpp"
#include "orka/grid.hpp"
#include "orka/multires.hpp"

namespace orka {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss kernel family: D_{jk} = exp(-((mod(j - s*k, M) - center)/alpha)^2)
// with 1-based j, k; the modulo keeps the bump M-periodic.
struct GaussSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double alpha = 1.0;
    double shift_per_col = 0.0;
    std::optional<double> center;  // defaults to rows / 2
};

Grid generate_gauss(const GaussSpec& spec);

// Binary grid format: magic "ORKA", u32 version 1, u64 rows, u64 cols,
// rows*cols little-endian doubles in column-major order.
void write_grid(const Grid& d, const std::string& path);
Grid read_grid(const std::string& path);

// CSV: one line per row, comma separated, no header, 17 significant digits.
void write_grid_csv(const Grid& d, const std::string& path);
Grid read_grid_csv(const std::string& path);

// Picks binary or CSV by the ".csv" extension.
void write_grid_auto(const Grid& d, const std::string& path);
Grid read_grid_auto(const std::string& path);

struct ObjectRecord {
    std::vector<Dyadic> path;
    double objective_value = 0.0;
    double residual_energy = 0.0;
};

// JSON result document for a tracking run.
struct ResultDocument {
    std::string mode;                 // "orka" or "multires"
    std::vector<Dyadic> path;
    int scale = 0;
    double objective_value = 0.0;
    double surrogate_value = 0.0;
    double residual_energy = 0.0;
    std::size_t trellis_nodes = 0;
    std::vector<LevelRecord> trace;
    std::optional<BoundReport> bounds;
    std::vector<ObjectRecord> objects;  // greedy extraction, if requested

    bool operator==(const ResultDocument&) const;
};

void write_result(const ResultDocument& doc, const std::string& path);
ResultDocument read_result(const std::string& path);
std::string result_to_json(const ResultDocument& doc);
ResultDocument result_from_json(const std::string& text);

}  // namespace orka
