#include "orka/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace orka {

using nlohmann::json;

Grid generate_gauss(const GaussSpec& spec) {
    if (spec.rows < 2 || spec.cols < 2)
        throw std::invalid_argument("generate_gauss: need at least 2x2");
    if (!(spec.alpha > 0.0))
        throw std::invalid_argument("generate_gauss: alpha must be positive");
    const double m = static_cast<double>(spec.rows);
    const double center = spec.center.value_or(m / 2.0);
    Grid d(spec.rows, spec.cols);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < spec.cols; ++k) {
        for (std::size_t j = 0; j < spec.rows; ++j) {
            // 1-based indices in the kernel formula
            double x = std::fmod(static_cast<double>(j + 1) -
                                     spec.shift_per_col * static_cast<double>(k + 1),
                                 m);
            if (x < 0.0) x += m;
            double t = (x - center) / spec.alpha;
            d.at(j, k) = std::exp(-t * t);
        }
    }
    return d;
}

namespace {

constexpr char kMagic[4] = {'O', 'R', 'K', 'A'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw io_error("grid file truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return static_cast<T>(v);
}

}  // namespace

void write_grid(const Grid& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write(kMagic, 4);
    write_le<std::uint32_t>(out, kVersion);
    write_le<std::uint64_t>(out, d.rows);
    write_le<std::uint64_t>(out, d.cols);
    for (double v : d.data) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        write_le<std::uint64_t>(out, bits);
    }
    if (!out) throw io_error("write failed: " + path);
}

Grid read_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw io_error("bad magic in " + path + " (not an ORKA grid file)");
    std::uint32_t version = read_le<std::uint32_t>(in);
    if (version != kVersion)
        throw io_error("unsupported grid version " + std::to_string(version));
    std::uint64_t rows = read_le<std::uint64_t>(in);
    std::uint64_t cols = read_le<std::uint64_t>(in);
    if (rows == 0 || cols == 0 || rows > (std::uint64_t(1) << 32) ||
        cols > (std::uint64_t(1) << 32) ||
        rows * cols > (std::uint64_t(1) << 34))
        throw io_error("grid dimensions out of range in " + path);
    Grid d(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (double& v : d.data) {
        std::uint64_t bits = read_le<std::uint64_t>(in);
        std::memcpy(&v, &bits, 8);
    }
    return d;
}

void write_grid_csv(const Grid& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.precision(17);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t k = 0; k < d.cols; ++k) {
            if (k) out << ',';
            out << d.at(i, k);
        }
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

Grid read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw io_error("ragged CSV in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw io_error("empty CSV: " + path);
    Grid d(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t k = 0; k < d.cols; ++k) d.at(i, k) = rows[i][k];
    return d;
}

namespace {
bool has_csv_ext(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}
}  // namespace

void write_grid_auto(const Grid& d, const std::string& path) {
    has_csv_ext(path) ? write_grid_csv(d, path) : write_grid(d, path);
}

Grid read_grid_auto(const std::string& path) {
    return has_csv_ext(path) ? read_grid_csv(path) : read_grid(path);
}

namespace {

json path_to_json(const std::vector<Dyadic>& path) {
    json nums = json::array();
    int scale = path.empty() ? 0 : path.front().log2_den;
    for (const Dyadic& d : path) nums.push_back(d.num);
    return json{{"numerators", nums}, {"log2_denominator", scale}};
}

std::vector<Dyadic> path_from_json(const json& j) {
    std::vector<Dyadic> out;
    int scale = j.at("log2_denominator").get<int>();
    for (const auto& n : j.at("numerators")) out.push_back({n.get<long>(), scale});
    return out;
}

json bounds_to_json(const BoundReport& b) {
    return json{{"shift_gap", b.shift_gap},
                {"shift_bound", b.shift_bound},
                {"highpass_gap", b.highpass_gap},
                {"highpass_bound", b.highpass_bound},
                {"total_gap", b.total_gap}};
}

BoundReport bounds_from_json(const json& j) {
    BoundReport b;
    b.shift_gap = j.at("shift_gap").get<double>();
    b.shift_bound = j.at("shift_bound").get<double>();
    b.highpass_gap = j.at("highpass_gap").get<double>();
    b.highpass_bound = j.at("highpass_bound").get<double>();
    b.total_gap = j.at("total_gap").get<double>();
    return b;
}

}  // namespace

bool ResultDocument::operator==(const ResultDocument& o) const {
    auto brep = [](const std::optional<BoundReport>& b) {
        return b ? std::make_tuple(b->shift_gap, b->shift_bound, b->highpass_gap,
                                   b->highpass_bound, b->total_gap)
                 : std::make_tuple(0.0, 0.0, 0.0, 0.0, 0.0);
    };
    auto lrep = [](const LevelRecord& l) {
        return std::make_tuple(l.level, l.path, l.update, l.value, l.nodes);
    };
    auto orep = [](const ObjectRecord& r) {
        return std::make_tuple(r.path, r.objective_value, r.residual_energy);
    };
    if (!(mode == o.mode && path == o.path && scale == o.scale &&
          objective_value == o.objective_value &&
          surrogate_value == o.surrogate_value &&
          residual_energy == o.residual_energy &&
          trellis_nodes == o.trellis_nodes &&
          bounds.has_value() == o.bounds.has_value() &&
          brep(bounds) == brep(o.bounds) && trace.size() == o.trace.size() &&
          objects.size() == o.objects.size()))
        return false;
    for (std::size_t i = 0; i < trace.size(); ++i)
        if (lrep(trace[i]) != lrep(o.trace[i])) return false;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (orep(objects[i]) != orep(o.objects[i])) return false;
    return true;
}

std::string result_to_json(const ResultDocument& doc) {
    json j;
    j["format"] = "orka-result";
    j["version"] = 1;
    j["mode"] = doc.mode;
    j["path"] = path_to_json(doc.path);
    j["objective_value"] = doc.objective_value;
    j["surrogate_value"] = doc.surrogate_value;
    j["residual_energy"] = doc.residual_energy;
    j["trellis_nodes"] = doc.trellis_nodes;
    json trace = json::array();
    for (const LevelRecord& l : doc.trace)
        trace.push_back(json{{"level", l.level},
                             {"path", l.path},
                             {"update", l.update},
                             {"value", l.value},
                             {"nodes", l.nodes}});
    j["trace"] = trace;
    if (doc.bounds) j["bounds"] = bounds_to_json(*doc.bounds);
    if (!doc.objects.empty()) {
        json objs = json::array();
        for (const ObjectRecord& r : doc.objects)
            objs.push_back(json{{"path", path_to_json(r.path)},
                                {"objective_value", r.objective_value},
                                {"residual_energy", r.residual_energy}});
        j["objects"] = objs;
    }
    return j.dump(2);
}

ResultDocument result_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != "orka-result")
        throw io_error("not an orka result document");
    ResultDocument doc;
    doc.mode = j.at("mode").get<std::string>();
    doc.path = path_from_json(j.at("path"));
    doc.scale = doc.path.empty() ? 0 : doc.path.front().log2_den;
    doc.objective_value = j.at("objective_value").get<double>();
    doc.surrogate_value = j.at("surrogate_value").get<double>();
    doc.residual_energy = j.at("residual_energy").get<double>();
    doc.trellis_nodes = j.at("trellis_nodes").get<std::size_t>();
    for (const auto& l : j.at("trace")) {
        LevelRecord rec;
        rec.level = l.at("level").get<int>();
        rec.path = l.at("path").get<Path>();
        rec.update = l.at("update").get<Path>();
        rec.value = l.at("value").get<double>();
        rec.nodes = l.at("nodes").get<std::size_t>();
        doc.trace.push_back(std::move(rec));
    }
    if (j.contains("bounds")) doc.bounds = bounds_from_json(j.at("bounds"));
    if (j.contains("objects")) {
        for (const auto& o : j.at("objects")) {
            ObjectRecord rec;
            rec.path = path_from_json(o.at("path"));
            rec.objective_value = o.at("objective_value").get<double>();
            rec.residual_energy = o.at("residual_energy").get<double>();
            doc.objects.push_back(std::move(rec));
        }
    }
    return doc;
}

void write_result(const ResultDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << result_to_json(doc) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

ResultDocument read_result(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return result_from_json(ss.str());
}

}  // namespace orka
