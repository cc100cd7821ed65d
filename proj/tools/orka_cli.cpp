#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "orka/io.hpp"
#include "orka/multires.hpp"
#include "orka/orka.hpp"

namespace {

using namespace orka;

double wall_time() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

// Step-difference path error against a truth shift of s per column, the
// gauge-free comparison: sum_k |(path_k - path_1)/2^J - s*(k-1)|.
double step_error(const Path& path, int scale, double s) {
    double err = 0.0;
    double den = static_cast<double>(1L << scale);
    for (std::size_t k = 0; k < path.size(); ++k)
        err += std::abs(static_cast<double>(path[k] - path[0]) / den -
                        s * static_cast<double>(k));
    return err;
}

// Literal error against the anchored truth s*(k-1) with 1-based k; the first
// column is pinned at zero shift, so the truth shares that anchor.
double absolute_error(const Path& path, int scale, double s) {
    double err = 0.0;
    double den = static_cast<double>(1L << scale);
    for (std::size_t k = 0; k < path.size(); ++k)
        err += std::abs(static_cast<double>(path[k]) / den -
                        s * static_cast<double>(k));
    return err;
}

struct TrackOptions {
    std::string input, out, appearance_out, residual_out;
    std::string mode = "multires";
    std::string filter = "db6";
    long c = -1;       // single-resolution Lipschitz constant
    long c_prime = 1;  // multiresolution Lipschitz constant
    int k = 8;
    int j = 0;
    double mu = 1.0;
    int objects = 1;
    double threshold = 0.01;
    bool bounds = false;
    int level_override = -1;
};

ResultDocument run_track(const TrackOptions& opt) {
    Grid d = read_grid_auto(opt.input);
    ResultDocument doc;
    doc.mode = opt.mode;

    if (opt.mode == "orka") {
        OrkaConfig cfg;
        cfg.c = opt.c >= 0 ? opt.c : opt.c_prime;
        cfg.k = opt.k;
        cfg.mu = opt.mu;
        cfg.max_objects = opt.objects;
        cfg.residual_threshold = opt.threshold;
        if (opt.objects > 1) {
            GreedyResult g = solve_greedy(d, cfg);
            for (const ObjectEstimate& e : g.objects)
                doc.objects.push_back({rescale_path(e.path, 0), e.objective_value,
                                       e.residual_energy});
            if (!g.objects.empty()) {
                const ObjectEstimate& first = g.objects.front();
                doc.path = rescale_path(first.path, 0);
                doc.objective_value = first.objective_value;
                doc.residual_energy = frobenius_sq(g.residual);
            }
            if (!opt.residual_out.empty()) write_grid_auto(g.residual, opt.residual_out);
        } else {
            SingleResult r = solve_single(d, cfg);
            doc.path = rescale_path(r.estimate.path, 0);
            doc.objective_value = r.estimate.objective_value;
            doc.surrogate_value = r.surrogate_value;
            doc.residual_energy = r.estimate.residual_energy;
            doc.trellis_nodes = r.trellis_nodes;
            if (!opt.appearance_out.empty())
                write_grid_auto(r.estimate.appearance, opt.appearance_out);
            if (!opt.residual_out.empty())
                write_grid_auto(sub(d, place(r.estimate)), opt.residual_out);
            if (opt.bounds) {
                Path half(r.estimate.path.size());
                for (std::size_t i = 0; i < half.size(); ++i) {
                    long v = r.estimate.path[i];
                    half[i] = (v >= 0 ? v : v - 1) / 2;  // floor division
                }
                doc.bounds = make_bound_report(d, r.estimate.path, half, opt.k, opt.mu,
                                               wavelet_filter(opt.filter));
            }
        }
        return doc;
    }

    if (opt.mode != "multires")
        throw std::invalid_argument("unknown mode: " + opt.mode);
    if (opt.objects > 1 && opt.j > 0)
        throw std::invalid_argument(
            "greedy extraction needs integer paths; use --mode orka or --J 0");

    MultiresConfig cfg;
    cfg.c_prime = opt.c_prime;
    cfg.upsample_levels = opt.j;
    cfg.k = opt.k;
    cfg.mu = opt.mu;
    cfg.filter = wavelet_filter(opt.filter);
    if (opt.level_override >= 0) cfg.level_override = opt.level_override;

    MultiresResult r = solve_multires(d, cfg);
    doc.path = rescale_path(r.trace.final_path, r.trace.scale);
    doc.scale = r.trace.scale;
    doc.objective_value = r.estimate.objective_value;
    doc.surrogate_value = r.trace.levels.back().value;
    doc.residual_energy = r.estimate.residual_energy;
    doc.trellis_nodes = r.trace.total_nodes;
    doc.trace = r.trace.levels;
    if (!opt.appearance_out.empty())
        write_grid_auto(r.estimate.appearance, opt.appearance_out);
    if (opt.bounds) {
        Path half(r.trace.final_path.size());
        for (std::size_t i = 0; i < half.size(); ++i) {
            long v = r.trace.final_path[i];
            half[i] = (v >= 0 ? v : v - 1) / 2;
        }
        doc.bounds = make_bound_report(r.finest_grid, r.trace.final_path, half,
                                       opt.k, opt.mu, cfg.filter);
    }
    return doc;
}

int cmd_bench(const std::string& experiment, const std::string& out_path,
              std::size_t m, std::size_t n, long c, int kmax, double mu,
              unsigned seed) {
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot open for writing: " + out_path);
    out << "experiment,variant,param,value\n";
    out.precision(17);

    if (experiment == "runtime") {
        std::vector<int> ks;
        for (int k = 1; k <= kmax; ++k) ks.push_back(k);
        std::mt19937 rng(seed);
        std::shuffle(ks.begin(), ks.end(), rng);  // repetition order only
        Grid d = generate_gauss({m, n, 10.0, static_cast<double>(c)});
        std::vector<std::pair<int, std::pair<double, double>>> rows;
        for (int k : ks) {
            OrkaConfig oc{c, k, mu};
            double t0 = wall_time();
            SingleResult sr = solve_single(d, oc);
            double orka_t = wall_time() - t0;
            MultiresConfig mc;
            mc.c_prime = c;
            mc.k = k;
            mc.mu = mu;
            mc.filter = wavelet_filter("db6");
            t0 = wall_time();
            MultiresResult mr = solve_multires(d, mc);
            double multi_t = wall_time() - t0;
            (void)sr;
            (void)mr;
            rows.push_back({k, {orka_t, multi_t}});
        }
        std::sort(rows.begin(), rows.end());
        for (auto& [k, t] : rows) {
            out << "runtime,orka," << k << ',' << t.first << '\n';
            out << "runtime,multires," << k << ',' << t.second << '\n';
        }
        return 0;
    }

    if (experiment == "upsampling") {
        const double s = 1.0 / 3.0;
        Grid d = generate_gauss({m, n, 10.0, s});
        OrkaConfig oc{1, std::min<int>(kmax, static_cast<int>(n) - 1), mu};
        SingleResult base = solve_single(d, oc);
        out << "upsampling,orka,0,"
            << absolute_error(base.estimate.path, 0, s) << '\n';
        for (int j = 0; j <= 6; ++j) {
            MultiresConfig mc;
            mc.c_prime = 1;
            mc.upsample_levels = j;
            mc.k = std::min<int>(kmax, static_cast<int>(n) - 1);
            mc.mu = mu;
            mc.filter = wavelet_filter("db6");
            MultiresResult r = solve_multires(d, mc);
            out << "upsampling,multires," << j << ','
                << absolute_error(r.trace.final_path, r.trace.scale, s) << '\n';
        }
        return 0;
    }

    if (experiment == "localization") {
        const double s = 10.0;
        for (int k : {3, std::min<int>(15, static_cast<int>(n) - 1)}) {
            for (double alpha : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                Grid d = generate_gauss({m, n, alpha, s});
                MultiresConfig mc;
                mc.c_prime = static_cast<long>(s);
                mc.k = k;
                mc.mu = mu;
                // Haar: longer filters smear narrow peaks across the coarse
                // levels and mask the localization breakdown being measured.
                mc.filter = wavelet_filter("haar");
                MultiresResult r = solve_multires(d, mc);
                out << "localization,multires-K" << k << ',' << alpha << ','
                    << step_error(r.trace.final_path, r.trace.scale, s) << '\n';
            }
        }
        return 0;
    }

    throw std::invalid_argument("unknown experiment: " + experiment +
                                " (expected runtime, upsampling or localization)");
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("ORKA_THREADS")) {
#ifdef _OPENMP
        omp_set_num_threads(std::max(1, std::atoi(threads)));
#endif
    }

    CLI::App app{"Tracks and extracts moving, deforming objects from "
                 "multi-measurement 2-D data"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic Gauss-kernel grid");
    std::size_t gm = 512, gn = 512;
    double alpha = 10.0, s = 10.0;
    double center = -1.0;
    std::string gout;
    gen->add_option("--M", gm, "rows (samples per measurement)");
    gen->add_option("--N", gn, "columns (measurements)");
    gen->add_option("--alpha", alpha, "kernel width");
    gen->add_option("--s", s, "shift per column");
    gen->add_option("--center", center, "kernel center (default M/2)");
    gen->add_option("--out", gout, "output file (.csv for text, binary otherwise)")
        ->required();

    // track
    auto* track = app.add_subcommand("track", "Recover a shift path and appearance");
    TrackOptions topt;
    track->add_option("input", topt.input, "grid file")->required();
    track->add_option("--mode", topt.mode, "orka (single resolution) or multires");
    track->add_option("--C", topt.c, "Lipschitz constant for --mode orka");
    track->add_option("--Cprime", topt.c_prime, "Lipschitz constant at the data resolution");
    track->add_option("--K", topt.k, "approximation band");
    track->add_option("--J", topt.j, "upsampling levels past the data resolution");
    track->add_option("--mu", topt.mu, "change penalty");
    track->add_option("--filter", topt.filter, "wavelet filter: haar, db2, db6");
    track->add_option("--objects", topt.objects, "greedy extraction of up to n objects");
    track->add_option("--threshold", topt.threshold, "greedy residual threshold");
    track->add_option("--L", topt.level_override, "force pyramid depth");
    track->add_flag("--bounds", topt.bounds, "attach the error-bound report");
    track->add_option("--out", topt.out, "result document (JSON)")->required();
    track->add_option("--appearance-out", topt.appearance_out, "write the appearance grid");
    track->add_option("--residual-out", topt.residual_out, "write the residual grid");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark sweeps, CSV output");
    std::string experiment, bout;
    std::size_t bm = 256, bn = 128;
    long bc = 5;
    int bkmax = 4;
    double bmu = 1.0;
    unsigned seed = 0;
    bench->add_option("experiment", experiment, "runtime | upsampling | localization")
        ->required();
    bench->add_option("--out", bout, "CSV output file")->required();
    bench->add_option("--M", bm, "rows");
    bench->add_option("--N", bn, "columns");
    bench->add_option("--C", bc, "Lipschitz constant for the runtime sweep");
    bench->add_option("--Kmax", bkmax, "largest band to sweep");
    bench->add_option("--mu", bmu, "change penalty");
    bench->add_option("--seed", seed, "repetition order seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GaussSpec spec{gm, gn, alpha, s,
                           center >= 0.0 ? std::optional<double>(center) : std::nullopt};
            write_grid_auto(generate_gauss(spec), gout);
            return 0;
        }
        if (track->parsed()) {
            ResultDocument doc = run_track(topt);
            write_result(doc, topt.out);
            std::cerr << "orka: trellis nodes " << doc.trellis_nodes << "\n";
            return 0;
        }
        if (bench->parsed())
            return cmd_bench(experiment, bout, bm, bn, bc, bkmax, bmu, seed);
    } catch (const orka::resource_error& e) {
        std::cerr << "orka: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "orka: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
