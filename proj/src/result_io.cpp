#include "progx/result_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace progx {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_energy(std::string& out, const EnergyBreakdown& e) {
    out += "{\"data\": " + num(e.data) + ", \"smooth\": " + num(e.smoothness) +
           ", \"label\": " + num(e.label) + ", \"total\": " + num(e.total) + "}";
}

void append_instances(std::string& out, const std::vector<Instance>& instances,
                      const std::string& indent) {
    out += "[";
    for (size_t i = 0; i < instances.size(); ++i) {
        out += i ? ",\n" : "\n";
        out += indent + "  {\"class\": \"" + instances[i].model().name + "\", \"params\": [";
        for (size_t j = 0; j < instances[i].params.size(); ++j) {
            if (j) out += ", ";
            out += num(instances[i].params[j]);
        }
        out += "]}";
    }
    out += instances.empty() ? "]" : "\n" + indent + "]";
}

const char* sampler_name(ProposalConfig::Sampler s) {
    return s == ProposalConfig::Sampler::Napsac ? "napsac" : "uniform";
}

const char* termination_name(TerminationReason r) {
    switch (r) {
        case TerminationReason::ConfidenceReached: return "confidence_reached";
        case TerminationReason::ProposalCap: return "proposal_cap";
        case TerminationReason::Interrupted: return "interrupted";
    }
    return "unknown";
}

}  // namespace

std::string result_to_json(const FittingResult& result, const ProgXConfig& config,
                           bool include_snapshots) {
    std::string out = "{\n";

    out += "  \"instances\": ";
    append_instances(out, result.instances, "  ");
    out += ",\n";

    out += "  \"labels\": [";
    const auto labels = external_labels(result.labels, result.instances.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(labels[i]);
    }
    out += "],\n";

    out += "  \"energy\": ";
    append_energy(out, result.energy);
    out += ",\n";

    out += "  \"termination\": \"";
    out += termination_name(result.termination);
    out += "\",\n";
    out += "  \"total_samples\": " + std::to_string(result.total_samples) + ",\n";

    out += "  \"snapshots\": [";
    if (include_snapshots) {
        for (size_t s = 0; s < result.snapshots.size(); ++s) {
            const SnapshotRecord& snap = result.snapshots[s];
            out += s ? ",\n" : "\n";
            out += "    {\"iteration\": " + std::to_string(snap.iteration) +
                   ", \"instances\": ";
            append_instances(out, snap.instances, "    ");
            out += ", \"energy\": ";
            append_energy(out, snap.energy);
            out += ", \"remaining_inlier_bound\": " + num(snap.remaining_inlier_bound);
            out += ", \"samples\": " + std::to_string(snap.cumulative_samples);
            out += ", \"time_ms\": " + num(snap.wall_ms) + "}";
        }
        if (!result.snapshots.empty()) out += "\n  ";
    }
    out += "],\n";

    out += "  \"config\": {";
    out += "\"confidence\": " + num(config.confidence) + ", ";
    out += "\"classes\": [";
    for (size_t i = 0; i < config.classes.size(); ++i) {
        if (i) out += ", ";
        out += std::string("{\"class\": \"") + model_class(config.classes[i].id).name +
               "\", \"threshold\": " + num(config.classes[i].epsilon) + "}";
    }
    out += "], ";
    out += "\"jaccard_epsilon\": " + num(config.jaccard_epsilon) + ", ";
    out += "\"spatial_weight\": " + num(config.spatial_weight) + ", ";
    out += "\"label_cost\": " + num(config.label_cost) + ", ";
    out += "\"min_support\": " + std::to_string(config.min_support) + ", ";
    out += "\"max_proposals\": " + std::to_string(config.max_proposals) + ", ";
    out += "\"seed\": " + std::to_string(config.seed) + ", ";
    out += "\"sampler\": \"" + std::string(sampler_name(config.proposal.sampler)) + "\", ";
    out += "\"local_opt\": \"";
    out += config.proposal.local_opt == ProposalConfig::LocalOpt::GraphCut ? "graphcut"
                                                                           : "refit";
    out += "\", ";
    out += "\"inner_confidence\": " + num(config.proposal.inner_confidence) + ", ";
    out += "\"max_inner_iterations\": " + std::to_string(config.proposal.max_inner_iterations) +
           ", ";
    out += "\"neighborhood\": {\"mode\": \"";
    out += config.graph.mode == GraphConfig::Mode::Grid ? "grid" : "knn";
    out += "\", \"cell_size\": " + num(config.graph.cell_size) +
           ", \"k\": " + std::to_string(config.graph.k) + "}, ";
    out += "\"minhash_k\": " + std::to_string(config.minhash_k);
    out += "},\n";

    out += "  \"timing_ms\": " + num(result.wall_ms) + "\n";
    out += "}\n";
    return out;
}

void write_result_json(const FittingResult& result, const ProgXConfig& config,
                       bool include_snapshots, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write result file: " + path);
    out << result_to_json(result, config, include_snapshots);
}

FittingResult result_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    FittingResult result;
    for (const auto& ji : j.at("instances")) {
        const auto id = model_class_by_name(ji.at("class").get<std::string>());
        if (!id) throw std::runtime_error("result JSON: unknown model class");
        std::vector<double> params = ji.at("params").get<std::vector<double>>();
        auto inst = Instance::make(*id, params);
        if (!inst) throw std::runtime_error("result JSON: invalid instance parameters");
        inst->state = Instance::State::Active;
        result.instances.push_back(std::move(*inst));
    }
    const auto labels = j.at("labels").get<std::vector<int>>();
    result.labels.resize(labels.size());
    for (size_t p = 0; p < labels.size(); ++p)
        result.labels[p] = labels[p] == 0 ? static_cast<uint32_t>(result.instances.size())
                                          : static_cast<uint32_t>(labels[p] - 1);
    if (j.contains("energy")) {
        const auto& je = j.at("energy");
        result.energy.data = je.at("data").get<double>();
        result.energy.smoothness = je.at("smooth").get<double>();
        result.energy.label = je.at("label").get<double>();
        result.energy.total = je.at("total").get<double>();
    }
    if (j.contains("timing_ms")) result.wall_ms = j.at("timing_ms").get<double>();
    return result;
}

FittingResult read_result_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open result file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return result_from_json(ss.str());
}

namespace {

const char* kPalette[] = {"#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231",
                          "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe",
                          "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000",
                          "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080"};

}  // namespace

std::string scene_to_svg(const Scene& scene, std::span<const int> labels) {
    const size_t n = scene.point_count();
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (size_t i = 0; i < n; ++i) {
        xmin = std::min(xmin, scene.data(i, 0));
        xmax = std::max(xmax, scene.data(i, 0));
        ymin = std::min(ymin, scene.data(i, 1));
        ymax = std::max(ymax, scene.data(i, 1));
    }
    const double pad = 0.03 * std::max(xmax - xmin, ymax - ymin) + 1.0;
    xmin -= pad;
    ymin -= pad;
    xmax += pad;
    ymax += pad;
    const double r = 0.004 * std::max(xmax - xmin, ymax - ymin);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << " " << ymin
        << " " << (xmax - xmin) << " " << (ymax - ymin) << "\">\n";
    svg << "<rect x=\"" << xmin << "\" y=\"" << ymin << "\" width=\"" << (xmax - xmin)
        << "\" height=\"" << (ymax - ymin) << "\" fill=\"#14141e\"/>\n";
    for (size_t i = 0; i < n; ++i) {
        const int label = i < labels.size() ? labels[i] : 0;
        const char* color =
            label <= 0 ? "#ffffff"
                       : kPalette[(static_cast<size_t>(label) - 1) % std::size(kPalette)];
        svg << "<circle cx=\"" << scene.data(i, 0) << "\" cy=\"" << scene.data(i, 1)
            << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_scene_svg(const Scene& scene, std::span<const int> labels,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg file: " + path);
    out << scene_to_svg(scene, labels);
}

}  // namespace progx
