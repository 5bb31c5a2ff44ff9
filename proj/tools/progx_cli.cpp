// progx command-line tool: synthetic-scene generation, multi-model fitting,
// benchmarking and evaluation. Talks to the library through the C API.

#include <progx_c.h>

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace {

struct SceneDeleter {
    void operator()(progx_scene* s) const { progx_scene_destroy(s); }
};
struct ConfigDeleter {
    void operator()(progx_config* c) const { progx_config_destroy(c); }
};
struct ResultDeleter {
    void operator()(progx_result* r) const { progx_result_destroy(r); }
};
using ScenePtr = std::unique_ptr<progx_scene, SceneDeleter>;
using ConfigPtr = std::unique_ptr<progx_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<progx_result, ResultDeleter>;

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void check(progx_status status, const std::string& what) {
    if (status != PROGX_OK)
        throw DataError(what + ": " + progx_status_name(status) + " (" + progx_last_error() +
                        ")");
}

struct FitOptions {
    std::vector<std::string> classes{"line"};
    std::vector<double> thresholds{2.0};
    double confidence = 0.95;
    double jaccard_epsilon = 0.1;
    double spatial_weight = 0.15;
    double label_cost = 0.0;
    size_t min_support = 0;
    size_t max_proposals = 100;
    uint64_t seed = 0;
    std::string sampler = "napsac";
    std::string local_opt = "refit";
    double inner_confidence = 0.95;
    size_t max_inner_iterations = 5000;
    std::string neighborhood = "knn";
    int knn = 8;
    double cell_size = 0.0;
    size_t minhash_k = 512;
    bool exact_jaccard = false;
};

void add_fit_options(CLI::App* cmd, FitOptions& opt) {
    cmd->add_option("--classes", opt.classes,
                    "model classes to rotate over (line, circle, homography, plane, cylinder)")
        ->delimiter(',');
    cmd->add_option("--threshold", opt.thresholds,
                    "inlier-outlier threshold(s); one value per class or one for all")
        ->delimiter(',');
    cmd->add_option("--confidence", opt.confidence, "RANSAC confidence mu");
    cmd->add_option("--jaccard-epsilon", opt.jaccard_epsilon,
                    "minimal Jaccard distance for accepting a proposal");
    cmd->add_option("--spatial-weight", opt.spatial_weight, "spatial coherence weight w_s");
    cmd->add_option("--label-cost", opt.label_cost, "per-instance label cost w_l");
    cmd->add_option("--min-support", opt.min_support, "minimum inliers to keep an instance");
    cmd->add_option("--max-proposals", opt.max_proposals, "outer iteration cap");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--sampler", opt.sampler, "napsac or uniform");
    cmd->add_option("--local-opt", opt.local_opt,
                    "local optimization: refit or graphcut");
    cmd->add_option("--inner-confidence", opt.inner_confidence,
                    "confidence of the proposal engine");
    cmd->add_option("--max-inner-iterations", opt.max_inner_iterations,
                    "iteration cap of the proposal engine");
    cmd->add_option("--neighborhood", opt.neighborhood, "knn or grid");
    cmd->add_option("--knn", opt.knn, "neighbor count for knn neighborhoods");
    cmd->add_option("--cell-size", opt.cell_size,
                    "grid cell size (0 = bbox diagonal / 20)");
    cmd->add_option("--minhash-k", opt.minhash_k, "number of min-hash functions");
    cmd->add_flag("--exact-jaccard", opt.exact_jaccard,
                  "use exact Jaccard similarity in validation");
}

progx_model_class class_by_name(const std::string& name) {
    if (name == "line" || name == "line2d") return PROGX_CLASS_LINE;
    if (name == "circle" || name == "circle2d") return PROGX_CLASS_CIRCLE;
    if (name == "homography") return PROGX_CLASS_HOMOGRAPHY;
    if (name == "plane" || name == "plane3d") return PROGX_CLASS_PLANE;
    if (name == "cylinder" || name == "cylinder3d") return PROGX_CLASS_CYLINDER;
    throw CLI::ValidationError("--classes", "unknown model class: " + name);
}

ConfigPtr make_config(const FitOptions& opt, uint64_t seed) {
    ConfigPtr cfg(progx_config_create());
    if (!cfg) throw DataError("cannot allocate config");
    if (opt.thresholds.size() != 1 && opt.thresholds.size() != opt.classes.size())
        throw CLI::ValidationError("--threshold",
                                   "need one threshold or one per class");
    for (size_t i = 0; i < opt.classes.size(); ++i) {
        const double eps =
            opt.thresholds.size() == 1 ? opt.thresholds[0] : opt.thresholds[i];
        check(progx_config_add_class(cfg.get(), class_by_name(opt.classes[i]), eps),
              "add class");
    }
    check(progx_config_set_confidence(cfg.get(), opt.confidence), "set confidence");
    check(progx_config_set_jaccard_epsilon(cfg.get(), opt.jaccard_epsilon),
          "set jaccard epsilon");
    check(progx_config_set_spatial_weight(cfg.get(), opt.spatial_weight),
          "set spatial weight");
    check(progx_config_set_label_cost(cfg.get(), opt.label_cost), "set label cost");
    check(progx_config_set_min_support(cfg.get(), opt.min_support), "set min support");
    check(progx_config_set_max_proposals(cfg.get(), opt.max_proposals), "set max proposals");
    check(progx_config_set_seed(cfg.get(), seed), "set seed");
    check(progx_config_set_sampler(cfg.get(), opt.sampler.c_str()), "set sampler");
    check(progx_config_set_local_optimization(cfg.get(), opt.local_opt.c_str()),
          "set local optimization");
    check(progx_config_set_inner_confidence(cfg.get(), opt.inner_confidence),
          "set inner confidence");
    check(progx_config_set_max_inner_iterations(cfg.get(), opt.max_inner_iterations),
          "set inner iterations");
    if (opt.neighborhood == "grid")
        check(progx_config_set_neighborhood_grid(cfg.get(), opt.cell_size),
              "set neighborhood");
    else if (opt.neighborhood == "knn")
        check(progx_config_set_neighborhood_knn(cfg.get(), opt.knn), "set neighborhood");
    else
        throw CLI::ValidationError("--neighborhood", "must be knn or grid");
    check(progx_config_set_minhash_k(cfg.get(), opt.minhash_k), "set minhash k");
    check(progx_config_set_exact_jaccard(cfg.get(), opt.exact_jaccard ? 1 : 0),
          "set exact jaccard");
    return cfg;
}

ScenePtr load_scene_checked(const std::string& path, const std::string& format_hint) {
    progx_scene* raw = nullptr;
    check(progx_scene_load(path.c_str(), format_hint.empty() ? nullptr : format_hint.c_str(),
                           &raw),
          "load scene " + path);
    return ScenePtr(raw);
}

std::string default_svg_path(const std::string& out) {
    const size_t dot = out.rfind('.');
    return (dot == std::string::npos ? out : out.substr(0, dot)) + ".svg";
}

int run_synth(const std::string& gen, int lines, int points, double noise, double ratio,
              const std::vector<double>& bbox, uint64_t seed, const std::string& out) {
    const double box[4] = {bbox[0], bbox[1], bbox[2], bbox[3]};
    progx_scene* raw = nullptr;
    if (gen == "star")
        check(progx_scene_gen_star(lines, points, noise, ratio, box, seed, &raw),
              "generate star scene");
    else if (gen == "stair")
        check(progx_scene_gen_stair(lines, points, noise, ratio, box, seed, &raw),
              "generate stair scene");
    else
        throw CLI::ValidationError("--gen", "must be star or stair");
    ScenePtr scene(raw);
    check(progx_scene_save(scene.get(), out.c_str()), "save scene " + out);
    std::printf("wrote %s (%zu points)\n", out.c_str(), progx_scene_point_count(scene.get()));
    return 0;
}

int run_fit(const std::string& input, const std::string& format_hint, const FitOptions& opt,
            bool snapshots, bool plot, std::string svg_path, const std::string& out) {
    ScenePtr scene = load_scene_checked(input, format_hint);
    ConfigPtr cfg = make_config(opt, opt.seed);
    progx_result* raw = nullptr;
    check(progx_fit(scene.get(), cfg.get(), &raw), "fit");
    ResultPtr result(raw);
    check(progx_result_write_json(result.get(), snapshots ? 1 : 0, out.c_str()),
          "write " + out);
    if (plot) {
        if (svg_path.empty()) svg_path = default_svg_path(out);
        check(progx_result_write_svg(result.get(), scene.get(), svg_path.c_str()),
              "write " + svg_path);
    }
    double energy[4] = {};
    check(progx_result_energy(result.get(), energy), "read energy");
    std::printf("instances: %zu  energy: %.6g  samples: %zu  time: %.1f ms\n",
                progx_result_instance_count(result.get()), energy[3],
                progx_result_total_samples(result.get()),
                progx_result_wall_ms(result.get()));
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int run_bench(const std::string& input, const std::string& format_hint, const FitOptions& opt,
              size_t runs, const std::string& format, const std::string& out) {
    ScenePtr scene = load_scene_checked(input, format_hint);
    if (!progx_scene_has_ground_truth(scene.get()))
        throw DataError("bench needs a scene with ground truth");

    std::vector<progx_eval_report> reports(runs);
    std::vector<std::string> errors(runs);
    std::atomic<size_t> next{0};
    const size_t workers =
        std::min<size_t>(runs, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t run = next.fetch_add(1);
                if (run >= runs) return;
                try {
                    ConfigPtr cfg = make_config(opt, opt.seed + run);  // per-run seed
                    progx_result* raw = nullptr;
                    check(progx_fit(scene.get(), cfg.get(), &raw), "fit");
                    ResultPtr result(raw);
                    check(progx_evaluate(result.get(), scene.get(), &reports[run]),
                          "evaluate");
                } catch (const std::exception& e) {
                    errors[run] = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw DataError(e);

    std::string text;
    if (format == "csv") {
        text = "run,me,fn,fp,ms\n";
        for (size_t r = 0; r < runs; ++r) {
            char row[128];
            std::snprintf(row, sizeof(row), "%zu,%.6f,%d,%d,%.3f\n", r,
                          reports[r].misclassification_error, reports[r].false_negatives,
                          reports[r].false_positives, reports[r].time_ms);
            text += row;
        }
    } else {
        char row[160];
        std::snprintf(row, sizeof(row), "%4s %10s %4s %4s %10s\n", "run", "me", "fn", "fp",
                      "ms");
        text = row;
        for (size_t r = 0; r < runs; ++r) {
            std::snprintf(row, sizeof(row), "%4zu %10.6f %4d %4d %10.3f\n", r,
                          reports[r].misclassification_error, reports[r].false_negatives,
                          reports[r].false_positives, reports[r].time_ms);
            text += row;
        }
    }
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::FILE* f = std::fopen(out.c_str(), "w");
        if (!f) throw DataError("cannot write " + out);
        std::fputs(text.c_str(), f);
        std::fclose(f);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int run_eval(const std::string& result_path, const std::string& scene_path,
             const std::string& format_hint, const std::string& format) {
    ScenePtr scene = load_scene_checked(scene_path, format_hint);
    progx_result* raw = nullptr;
    check(progx_result_load_json(result_path.c_str(), &raw), "load result " + result_path);
    ResultPtr result(raw);
    progx_eval_report report;
    check(progx_evaluate(result.get(), scene.get(), &report), "evaluate");
    if (format == "csv") {
        std::printf("me,fn,fp,instance_delta\n%.6f,%d,%d,%d\n",
                    report.misclassification_error, report.false_negatives,
                    report.false_positives, report.instance_delta);
    } else {
        std::printf(
            "{\"me\": %.6f, \"fn\": %d, \"fp\": %d, \"instance_delta\": %d}\n",
            report.misclassification_error, report.false_negatives, report.false_positives,
            report.instance_delta);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"progx: progressive multi-class multi-instance model fitting"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic scene");
    std::string gen = "star", synth_out = "scene.txt";
    int lines = 5, points = 250;
    double noise = 1.0, ratio = 0.5;
    std::vector<double> bbox{0.0, 0.0, 600.0, 600.0};
    uint64_t synth_seed = 0;
    synth->add_option("--gen", gen, "generator: star or stair");
    synth->add_option("--lines", lines, "number of lines / segments");
    synth->add_option("--points", points, "points per line");
    synth->add_option("--noise", noise, "inlier noise sigma");
    synth->add_option("--outlier-ratio", ratio, "outlier ratio nu in [0,1)");
    synth->add_option("--bbox", bbox, "bounding box: xmin ymin xmax ymax")->expected(4);
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("-o,--out", synth_out, "output scene file");

    // fit
    auto* fit = app.add_subcommand("fit", "fit model instances to a scene");
    std::string fit_input, fit_out = "result.json", fit_scene_format, fit_svg;
    bool fit_snapshots = false, fit_plot = false;
    FitOptions fit_opt;
    fit->add_option("input", fit_input, "scene file")->required();
    fit->add_option("-o,--out", fit_out, "output result JSON");
    fit->add_option("--scene-format", fit_scene_format, "xy, xyz or corr (header override)");
    fit->add_flag("--snapshots", fit_snapshots, "include per-iteration snapshots");
    fit->add_flag("--plot", fit_plot, "write an SVG scatter of the labeling");
    fit->add_option("--svg", fit_svg, "SVG output path (with --plot)");
    add_fit_options(fit, fit_opt);

    // bench
    auto* bench = app.add_subcommand("bench", "repeated fitting with evaluation");
    std::string bench_input, bench_scene_format, bench_format = "table", bench_out;
    size_t bench_runs = 5;
    FitOptions bench_opt;
    bench->add_option("input", bench_input, "scene file with ground truth")->required();
    bench->add_option("--runs", bench_runs, "number of repetitions");
    bench->add_option("--scene-format", bench_scene_format, "xy, xyz or corr");
    bench->add_option("--format", bench_format, "output format: table or csv");
    bench->add_option("-o,--out", bench_out, "write the table to a file");
    add_fit_options(bench, bench_opt);

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a result against ground truth");
    std::string eval_result, eval_scene, eval_scene_format, eval_format = "json";
    eval->add_option("result", eval_result, "result JSON file")->required();
    eval->add_option("scene", eval_scene, "scene file with ground truth")->required();
    eval->add_option("--scene-format", eval_scene_format, "xy, xyz or corr");
    eval->add_option("--format", eval_format, "output format: json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (synth->parsed())
            return run_synth(gen, lines, points, noise, ratio, bbox, synth_seed, synth_out);
        if (fit->parsed())
            return run_fit(fit_input, fit_scene_format, fit_opt, fit_snapshots, fit_plot,
                           fit_svg, fit_out);
        if (bench->parsed())
            return run_bench(bench_input, bench_scene_format, bench_opt, bench_runs,
                             bench_format, bench_out);
        if (eval->parsed())
            return run_eval(eval_result, eval_scene, eval_scene_format, eval_format);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
