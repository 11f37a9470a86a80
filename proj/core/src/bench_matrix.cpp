#include "causalkit/bench_matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "causalkit/ci.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/eval.hpp"
#include "causalkit/graph_io.hpp"
#include "causalkit/kci.hpp"
#include "causalkit/manifest.hpp"
#include "causalkit/pc.hpp"
#include "causalkit/scm.hpp"
#include "causalkit/sha256.hpp"

namespace causal {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct DatasetSpec {
    std::string name;
    std::string graph_path;
    MechanismSpec mechanism;
    NoiseSpec noise = NoiseSpec::gaussian(0.0, 1.0);
    std::optional<int> samples;
};

struct MethodSpec {
    std::string name;
    std::string ci;  // fisher | kci | oracle
    std::map<std::string, std::string> priors;  // dataset name -> graph doc path
    std::optional<std::string> prior_all;       // fallback for every dataset
    bool forbid_from_prior = true;
};

struct BenchConfig {
    double alpha = 0.05;
    MatchMode mode = MatchMode::directed_strict;
    std::vector<std::uint64_t> seeds;
    int samples = 1000;
    int jobs = 1;
    std::vector<DatasetSpec> datasets;
    std::vector<MethodSpec> methods;
};

struct CellOutcome {
    std::string method;
    std::string dataset;
    std::uint64_t seed;
    bool ok = false;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    std::string error;
};

MechanismSpec parse_mechanism(const ordered_json& d) {
    const std::string kind = d.value("mechanism", "linear");
    if (kind == "linear") {
        return MechanismSpec::linear();
    }
    if (kind == "mlp") {
        MechanismSpec m = MechanismSpec::mlp();
        if (d.contains("depth")) m.depth = d.at("depth").get<int>();
        if (d.contains("width")) m.width = d.at("width").get<int>();
        return m;
    }
    throw ParseError("unknown mechanism kind: " + kind);
}

NoiseSpec parse_noise(const ordered_json& d) {
    if (!d.contains("noise")) {
        return NoiseSpec::gaussian(0.0, 1.0);
    }
    const auto& n = d.at("noise");
    const std::string kind = n.at("kind").get<std::string>();
    if (kind == "gaussian") {
        return NoiseSpec::gaussian(n.value("mean", 0.0), n.value("stddev", 1.0));
    }
    if (kind == "uniform") {
        return NoiseSpec::uniform(n.value("lo", -1.0), n.value("hi", 1.0));
    }
    throw ParseError("unknown noise kind: " + kind);
}

BenchConfig parse_config(const ordered_json& j) {
    BenchConfig cfg;
    cfg.alpha = j.value("alpha", 0.05);
    cfg.mode = match_mode_from_string(j.value("mode", std::string("directed_strict")));
    if (!j.contains("seeds") || !j.at("seeds").is_array() || j.at("seeds").empty()) {
        throw ParseError("config needs a non-empty 'seeds' array");
    }
    for (const auto& s : j.at("seeds")) {
        cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    cfg.samples = j.value("samples", 1000);
    cfg.jobs = j.value("jobs", 1);

    if (!j.contains("datasets") || j.at("datasets").empty()) {
        throw ParseError("config needs a non-empty 'datasets' array");
    }
    for (const auto& d : j.at("datasets")) {
        DatasetSpec ds;
        ds.name = d.at("name").get<std::string>();
        ds.graph_path = d.at("graph").get<std::string>();
        ds.mechanism = parse_mechanism(d);
        ds.noise = parse_noise(d);
        if (d.contains("samples")) ds.samples = d.at("samples").get<int>();
        cfg.datasets.push_back(std::move(ds));
    }

    if (!j.contains("methods") || j.at("methods").empty()) {
        throw ParseError("config needs a non-empty 'methods' array");
    }
    for (const auto& m : j.at("methods")) {
        MethodSpec ms;
        ms.name = m.at("name").get<std::string>();
        ms.ci = m.at("ci").get<std::string>();
        if (ms.ci != "fisher" && ms.ci != "kci" && ms.ci != "oracle") {
            throw ParseError("unknown ci kind: " + ms.ci);
        }
        if (m.contains("priors")) {
            for (const auto& [k, v] : m.at("priors").items()) {
                ms.priors[k] = v.get<std::string>();
            }
        }
        if (m.contains("prior")) {
            ms.prior_all = m.at("prior").get<std::string>();
        }
        ms.forbid_from_prior = m.value("forbid_from_prior", true);
        cfg.methods.push_back(std::move(ms));
    }
    return cfg;
}

CellOutcome run_cell(const BenchConfig& cfg, const MethodSpec& method,
                     const DatasetSpec& ds, const GraphDocument& truth_doc,
                     std::uint64_t seed, const fs::path& base_dir) {
    CellOutcome cell;
    cell.method = method.name;
    cell.dataset = ds.name;
    cell.seed = seed;
    try {
        std::vector<std::string> variables;
        for (const auto& n : truth_doc.graph.nodes()) variables.push_back(n.name);

        std::unique_ptr<CiTest> test;
        if (method.ci == "oracle") {
            test = std::make_unique<DSepOracle>(truth_doc.graph);
        } else {
            ScmSpec spec{truth_doc.graph, ds.mechanism, ds.noise, seed};
            const Scm scm = build_scm(spec);
            const Dataset data = sample(scm, ds.samples.value_or(cfg.samples), seed, cfg.jobs);
            if (method.ci == "fisher") {
                test = std::make_unique<FisherZTest>(data);
            } else {
                KciOptions opts;
                opts.seed = seed;
                test = std::make_unique<KciTest>(data, opts);
            }
        }

        PriorKnowledge prior;
        std::optional<std::string> prior_path;
        if (const auto it = method.priors.find(ds.name); it != method.priors.end()) {
            prior_path = it->second;
        } else if (method.prior_all) {
            prior_path = method.prior_all;
        }
        if (prior_path) {
            const GraphDocument prior_doc = load_graph((base_dir / *prior_path).string());
            prior = PriorKnowledge::from_document(prior_doc, variables, method.forbid_from_prior);
        }

        PcConfig pc_cfg;
        pc_cfg.alpha = cfg.alpha;
        pc_cfg.jobs = cfg.jobs;
        const PcResult result = discover(*test, pc_cfg, prior);
        const EvalReport report = edge_metrics(result.graph, truth_doc.graph, cfg.mode);
        cell.ok = true;
        cell.precision = report.precision;
        cell.recall = report.recall;
        cell.f1 = report.f1;
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double v, const char* spec = "%.4f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string build_csv(const std::vector<CellOutcome>& cells) {
    std::string out = "method,dataset,seed,precision,recall,f1,error\n";
    for (const auto& c : cells) {
        out += csv_escape(c.method) + "," + csv_escape(c.dataset) + "," + std::to_string(c.seed);
        if (c.ok) {
            out += "," + fmt(c.precision) + "," + fmt(c.recall) + "," + fmt(c.f1) + ",";
        } else {
            out += ",,,," + csv_escape(c.error);
        }
        out += "\n";
    }
    return out;
}

std::string build_markdown(const BenchConfig& cfg, const std::vector<CellOutcome>& cells) {
    // Mean over the seeds that completed; a cell with no completed seed shows
    // a dash. Cells print as precision/recall/F1 to two decimals.
    std::map<std::pair<std::string, std::string>, std::vector<const CellOutcome*>> grouped;
    for (const auto& c : cells) {
        grouped[{c.method, c.dataset}].push_back(&c);
    }
    auto cell_text = [&](const std::string& method, const std::string& dataset) -> std::string {
        const auto it = grouped.find({method, dataset});
        if (it == grouped.end()) return "-";
        double p = 0, r = 0, f = 0;
        int ok = 0;
        for (const auto* c : it->second) {
            if (!c->ok) continue;
            p += c->precision;
            r += c->recall;
            f += c->f1;
            ++ok;
        }
        if (ok == 0) return "-";
        return fmt(p / ok, "%.2f") + "/" + fmt(r / ok, "%.2f") + "/" + fmt(f / ok, "%.2f");
    };

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"method"};
    for (const auto& d : cfg.datasets) header.push_back(d.name);
    rows.push_back(header);
    for (const auto& m : cfg.methods) {
        std::vector<std::string> row{m.name};
        for (const auto& d : cfg.datasets) {
            row.push_back(cell_text(m.name, d.name));
        }
        rows.push_back(row);
    }

    std::vector<size_t> widths(header.size(), 0);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::ostringstream out;
    out << "Mean precision/recall/F1 over seeds (" << to_string(cfg.mode)
        << ", alpha=" << fmt(cfg.alpha, "%g") << ")\n\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        out << "|";
        for (size_t i = 0; i < rows[r].size(); ++i) {
            out << " " << rows[r][i] << std::string(widths[i] - rows[r][i].size(), ' ') << " |";
        }
        out << "\n";
        if (r == 0) {
            out << "|";
            for (size_t i = 0; i < widths.size(); ++i) {
                out << std::string(widths[i] + 2, '-') << "|";
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string build_provenance(const std::string& config_path, const BenchConfig& cfg,
                             const std::vector<CellOutcome>& cells) {
    ordered_json j;
    j["tool"] = "causalkit";
    j["version"] = kVersion;
    j["config"] = config_path;
    j["config_sha256"] = sha256_file_hex(config_path);
    j["alpha"] = cfg.alpha;
    j["mode"] = to_string(cfg.mode);
    j["samples"] = cfg.samples;
    j["seeds"] = cfg.seeds;
    j["cells"] = ordered_json::array();
    for (const auto& c : cells) {
        ordered_json cell;
        cell["method"] = c.method;
        cell["dataset"] = c.dataset;
        cell["seed"] = c.seed;
        cell["status"] = c.ok ? "ok" : "error";
        if (!c.ok) {
            cell["error"] = c.error;
        }
        j["cells"].push_back(std::move(cell));
    }
    return j.dump(2) + "\n";
}

}  // namespace

BenchResult run_bench_matrix(const std::string& config_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open bench config " + config_path);
    }
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(config_path + ": " + e.what());
    }
    const BenchConfig cfg = parse_config(j);
    const fs::path base_dir = fs::path(config_path).parent_path();

    std::map<std::string, GraphDocument> truths;
    for (const auto& d : cfg.datasets) {
        truths.emplace(d.name, load_graph((base_dir / d.graph_path).string()));
    }

    std::vector<CellOutcome> cells;
    for (const auto& m : cfg.methods) {
        for (const auto& d : cfg.datasets) {
            for (const auto seed : cfg.seeds) {
                cells.push_back(run_cell(cfg, m, d, truths.at(d.name), seed, base_dir));
            }
        }
    }

    BenchResult result;
    result.csv = build_csv(cells);
    result.markdown = build_markdown(cfg, cells);
    result.provenance_json = build_provenance(config_path, cfg, cells);
    return result;
}

}  // namespace causal
