// causal: command-line front end for the causalkit library. Every subcommand
// is a thin wrapper over library calls; anything algorithmic lives in core.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "causalkit/bench_matrix.hpp"
#include "causalkit/ci.hpp"
#include "causalkit/dataset.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/eval.hpp"
#include "causalkit/graph_algorithms.hpp"
#include "causalkit/graph_io.hpp"
#include "causalkit/kci.hpp"
#include "causalkit/llm/client.hpp"
#include "causalkit/llm/memtest.hpp"
#include "causalkit/llm/prompts.hpp"
#include "causalkit/llm/strategies.hpp"
#include "causalkit/manifest.hpp"
#include "causalkit/pc.hpp"
#include "causalkit/refine.hpp"
#include "causalkit/scm.hpp"

namespace {

using namespace causal;

std::vector<std::string> argv_vector(int argc, char** argv) {
    return {argv, argv + argc};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
    if (!out.flush()) {
        throw IoError("write failure in " + path);
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Shared options for commands that need a CI source: sampled data for the
// statistical tests or a reference graph for the d-separation oracle.
struct CiSourceOpts {
    std::string data_path;
    std::string truth_path;
    std::string ci = "fisher";  // fisher | kci | oracle
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", data_path, "CSV with observations (fisher/kci)");
        cmd->add_option("--truth", truth_path, "reference graph for --ci oracle");
        cmd->add_option("--ci", ci, "CI test: fisher, kci, oracle")
            ->check(CLI::IsMember({"fisher", "kci", "oracle"}));
        cmd->add_option("--seed", seed, "seed for seeded components (kci subsampling)");
    }

    // Returns the CI test plus the dataset kept alive behind it.
    std::unique_ptr<CiTest> make(std::unique_ptr<Dataset>& holder,
                                 RunManifest& manifest) const {
        if (ci == "oracle") {
            if (truth_path.empty()) {
                throw CLI::ValidationError("--ci oracle requires --truth");
            }
            manifest.add_input(truth_path);
            return std::make_unique<DSepOracle>(load_graph(truth_path).graph);
        }
        if (data_path.empty()) {
            throw CLI::ValidationError("--ci " + ci + " requires --data");
        }
        manifest.add_input(data_path);
        std::ifstream in(data_path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open " + data_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        holder = std::make_unique<Dataset>(parse_csv(buf.str()));
        if (ci == "fisher") {
            return std::make_unique<FisherZTest>(*holder);
        }
        KciOptions opts;
        opts.seed = seed;
        return std::make_unique<KciTest>(*holder, opts);
    }
};

// Shared options for the two commands allowed to talk to a model endpoint.
struct LlmOpts {
    bool online = false;
    std::string cache_dir = ".llm_cache";
    std::string model;
    double temperature = 0.0;
    std::string endpoint;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--online", online,
                      "permit network requests (default: answer from cache only)");
        cmd->add_option("--cache-dir", cache_dir, "response cache directory");
        cmd->add_option("--model", model, "model name (default: CAUSALKIT_LLM_MODEL)");
        cmd->add_option("--temperature", temperature, "sampling temperature");
        cmd->add_option("--endpoint", endpoint,
                        "chat-completions URL (default: CAUSALKIT_LLM_ENDPOINT)");
    }

    llm::LlmConfig resolve() const {
        llm::LlmConfig cfg = llm::LlmConfig::from_env();
        cfg.offline = !online;
        cfg.cache_dir = cache_dir;
        cfg.temperature = temperature;
        if (!model.empty()) cfg.model = model;
        if (!endpoint.empty()) cfg.endpoint = endpoint;
        return cfg;
    }
};

PriorKnowledge load_prior(const std::string& path, const std::vector<std::string>& variables,
                          bool forbid_from_prior, RunManifest& manifest,
                          std::vector<IndexPair>* forbidden_out = nullptr) {
    manifest.add_input(path);
    const GraphDocument doc = load_graph(path);
    const PriorKnowledge prior =
        PriorKnowledge::from_document(doc, variables, forbid_from_prior);
    if (forbidden_out != nullptr) {
        forbidden_out->assign(prior.forbidden.begin(), prior.forbidden.end());
    }
    return prior;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal discovery toolkit"};
    app.require_subcommand(1);
    const auto argvv = argv_vector(argc, argv);

    // ---------------------------------------------------------------- gen-data
    auto* gen = app.add_subcommand("gen-data", "sample synthetic data from an SCM");
    struct GenOpts {
        std::string graph_path, graph_out, out;
        int random_nodes = 0;
        double edge_prob = 0.3;
        std::string mech = "linear";
        int depth = 3, width = 4;
        std::string init = "uniform";
        double init_a = 0.0, init_b = 1.0;
        double coef_lo = 0.0, coef_hi = 2.0;
        std::string noise = "gaussian";
        double noise_mean = 0.0, noise_stddev = 1.0;
        double noise_lo = -1.0, noise_hi = 1.0;
        int n = 1000;
        std::uint64_t seed = 0;
        int jobs = 1;
    };
    auto gen_opts = std::make_shared<GenOpts>();
    {
        auto* g_graph = gen->add_option("--graph", gen_opts->graph_path, "reference DAG document");
        auto* g_rand = gen->add_option("--random-nodes", gen_opts->random_nodes,
                                       "generate a random DAG with this many nodes instead");
        g_graph->excludes(g_rand);
        g_rand->excludes(g_graph);
        gen->add_option("--edge-prob", gen_opts->edge_prob,
                        "edge probability for --random-nodes");
        gen->add_option("--graph-out", gen_opts->graph_out,
                        "write the (possibly generated) DAG here");
        gen->add_option("--mech", gen_opts->mech, "mechanism: linear or mlp")
            ->check(CLI::IsMember({"linear", "mlp"}));
        gen->add_option("--depth", gen_opts->depth, "mlp weight-matrix count");
        gen->add_option("--width", gen_opts->width, "mlp hidden width");
        gen->add_option("--init", gen_opts->init, "mlp weight init: uniform, normal, xavier")
            ->check(CLI::IsMember({"uniform", "normal", "xavier"}));
        gen->add_option("--init-a", gen_opts->init_a, "init lower bound / mean");
        gen->add_option("--init-b", gen_opts->init_b, "init upper bound / stddev");
        gen->add_option("--coef-lo", gen_opts->coef_lo, "linear coefficient lower bound");
        gen->add_option("--coef-hi", gen_opts->coef_hi, "linear coefficient upper bound");
        gen->add_option("--noise", gen_opts->noise, "noise family: gaussian or uniform")
            ->check(CLI::IsMember({"gaussian", "uniform"}));
        gen->add_option("--noise-mean", gen_opts->noise_mean, "gaussian noise mean");
        gen->add_option("--noise-stddev", gen_opts->noise_stddev, "gaussian noise stddev");
        gen->add_option("--noise-lo", gen_opts->noise_lo, "uniform noise lower bound");
        gen->add_option("--noise-hi", gen_opts->noise_hi, "uniform noise upper bound");
        gen->add_option("--n", gen_opts->n, "sample count")->check(CLI::PositiveNumber);
        gen->add_option("--seed", gen_opts->seed, "master seed");
        gen->add_option("--jobs", gen_opts->jobs, "worker threads")->check(CLI::PositiveNumber);
        gen->add_option("--out", gen_opts->out, "output CSV path")->required();
    }
    gen->callback([gen_opts, &argvv]() {
        const GenOpts& o = *gen_opts;
        RunManifest manifest("gen-data", argvv);
        manifest.set_seed(o.seed);

        CausalGraph graph;
        if (!o.graph_path.empty()) {
            manifest.add_input(o.graph_path);
            graph = load_graph(o.graph_path).graph;
        } else if (o.random_nodes > 0) {
            graph = random_dag(o.random_nodes, o.edge_prob, o.seed);
        } else {
            throw CLI::ValidationError("gen-data needs --graph or --random-nodes");
        }

        ScmSpec spec;
        spec.graph = graph;
        if (o.mech == "linear") {
            spec.mechanism = MechanismSpec::linear(DistSpec::uniform(o.coef_lo, o.coef_hi));
        } else {
            DistSpec init = DistSpec::uniform(o.init_a, o.init_b);
            if (o.init == "normal") init = DistSpec::normal(o.init_a, o.init_b);
            if (o.init == "xavier") init = DistSpec::xavier();
            spec.mechanism = MechanismSpec::mlp(o.depth, o.width, init);
        }
        spec.noise = o.noise == "gaussian" ? NoiseSpec::gaussian(o.noise_mean, o.noise_stddev)
                                           : NoiseSpec::uniform(o.noise_lo, o.noise_hi);
        spec.seed = o.seed;

        const Scm scm = build_scm(spec);
        const Dataset data = sample(scm, o.n, o.seed, o.jobs);
        write_text(o.out, to_csv(data));
        manifest.add_output(o.out);
        if (!o.graph_out.empty()) {
            save_graph(o.graph_out, GraphDocument{graph, {}});
            manifest.add_output(o.graph_out);
        }
        manifest.set_option("mech", o.mech);
        manifest.set_option("noise", o.noise);
        manifest.set_option("n", o.n);
        manifest.set_option("jobs", o.jobs);
        manifest.write(o.out + ".manifest.json");
        std::cout << "wrote " << o.out << " (" << o.n << " rows, " << graph.node_count()
                  << " columns)\n";
    });

    // ---------------------------------------------------------------- discover
    auto* dis = app.add_subcommand("discover", "constraint-based structure discovery");
    struct DiscoverOpts {
        CiSourceOpts ci;
        double alpha = 0.05;
        std::optional<int> max_cond;
        int jobs = 1;
        std::string prior_path;
        bool no_forbid_from_prior = false;
        std::string name = "discovered";
        std::string out;
    };
    auto dis_opts = std::make_shared<DiscoverOpts>();
    {
        dis_opts->ci.attach(dis);
        dis->add_option("--alpha", dis_opts->alpha, "CI significance level");
        dis->add_option("--max-cond", dis_opts->max_cond, "largest conditioning set size");
        dis->add_option("--jobs", dis_opts->jobs, "worker threads")->check(CLI::PositiveNumber);
        dis->add_option("--prior", dis_opts->prior_path, "prior graph document");
        dis->add_flag("--no-forbid-from-prior", dis_opts->no_forbid_from_prior,
                      "ignore the prior document's forbidden edges");
        dis->add_option("--name", dis_opts->name, "name for the output graph");
        dis->add_option("--out", dis_opts->out, "output graph document")->required();
    }
    dis->callback([dis_opts, &argvv]() {
        const DiscoverOpts& o = *dis_opts;
        RunManifest manifest("discover", argvv);
        manifest.set_seed(o.ci.seed);
        std::unique_ptr<Dataset> holder;
        const auto test = o.ci.make(holder, manifest);

        PriorKnowledge prior;
        std::vector<IndexPair> forbidden_doc;
        if (!o.prior_path.empty()) {
            prior = load_prior(o.prior_path, test->variable_names(),
                               !o.no_forbid_from_prior, manifest, &forbidden_doc);
        }

        PcConfig cfg;
        cfg.alpha = o.alpha;
        cfg.max_cond_size = o.max_cond;
        cfg.jobs = o.jobs;
        PcResult result = discover(*test, cfg, prior);
        result.graph.set_name(o.name);
        save_graph(o.out, GraphDocument{result.graph, forbidden_doc});
        manifest.add_output(o.out);
        manifest.set_option("alpha", o.alpha);
        manifest.set_option("ci", o.ci.ci);
        manifest.set_option("jobs", o.jobs);
        if (o.max_cond) manifest.set_option("max_cond", *o.max_cond);
        manifest.write(o.out + ".manifest.json");

        std::cout << "nodes: " << result.graph.node_count()
                  << ", edges: " << result.graph.edge_count() << "\n"
                  << "directed: " << result.graph.directed_edges().size()
                  << ", undirected: " << result.graph.undirected_edges().size() << "\n"
                  << "excluded pairs: " << result.excluded_pairs.size()
                  << ", orientation conflicts: " << result.conflicts.size() << "\n";
    });

    // ------------------------------------------------------------------ refine
    auto* ref = app.add_subcommand("refine", "post-process a discovered graph");
    struct RefineOpts {
        std::string graph_path, out, scores_out;
        CiSourceOpts ci;
        bool enforce_dag = false;
        std::optional<double> prune_frac;
        std::string prune_order = "highest_p";
        std::optional<double> expand_alpha;
        std::string prior_path;
        bool no_forbid_from_prior = false;
    };
    auto ref_opts = std::make_shared<RefineOpts>();
    {
        ref->add_option("--graph", ref_opts->graph_path, "input graph document")->required();
        ref_opts->ci.attach(ref);
        ref->add_flag("--enforce-dag", ref_opts->enforce_dag,
                      "orient undirected edges and break directed cycles");
        ref->add_option("--prune-frac", ref_opts->prune_frac,
                        "remove this fraction of edges by witness p-value");
        ref->add_option("--prune-order", ref_opts->prune_order,
                        "highest_p (least support first) or lowest_p")
            ->check(CLI::IsMember({"highest_p", "lowest_p"}));
        ref->add_option("--expand-alpha", ref_opts->expand_alpha,
                        "add non-adjacent pairs with witness p below this");
        ref->add_option("--prior", ref_opts->prior_path, "prior graph document");
        ref->add_flag("--no-forbid-from-prior", ref_opts->no_forbid_from_prior,
                      "ignore the prior document's forbidden edges");
        ref->add_option("--scores-out", ref_opts->scores_out, "write prune scores CSV here");
        ref->add_option("--out", ref_opts->out, "output graph document")->required();
    }
    ref->callback([ref_opts, &argvv]() {
        const RefineOpts& o = *ref_opts;
        RunManifest manifest("refine", argvv);
        manifest.set_seed(o.ci.seed);
        manifest.add_input(o.graph_path);
        const GraphDocument in_doc = load_graph(o.graph_path);
        CausalGraph graph = in_doc.graph;

        std::vector<std::string> variables;
        for (const auto& n : graph.nodes()) variables.push_back(n.name);
        PriorKnowledge prior;
        const PriorKnowledge* prior_ptr = nullptr;
        if (!o.prior_path.empty()) {
            prior = load_prior(o.prior_path, variables, !o.no_forbid_from_prior, manifest);
            prior_ptr = &prior;
        }

        std::unique_ptr<Dataset> holder;
        std::unique_ptr<CiTest> test;
        if (o.prune_frac || o.expand_alpha) {
            test = o.ci.make(holder, manifest);
        }

        if (o.enforce_dag) {
            const AcyclicityResult r = enforce_acyclicity(graph, prior_ptr);
            std::cout << "enforce-dag: oriented " << r.oriented.size() << ", removed "
                      << r.removed_edges.size() << ", dropped "
                      << r.dropped_undirected.size() << "\n";
            graph = r.graph;
        }
        if (o.prune_frac) {
            PruneConfig cfg;
            cfg.frac = *o.prune_frac;
            cfg.order = o.prune_order == "lowest_p" ? PruneOrder::lowest_p_first
                                                    : PruneOrder::highest_p_first;
            auto [pruned, scores] = prune_edges(graph, *test, cfg);
            std::cout << "prune: removed " << (graph.edge_count() - pruned.edge_count())
                      << " of " << graph.edge_count() << " edges\n";
            graph = pruned;
            if (!o.scores_out.empty()) {
                std::string csv = "source,destination,witness,p_value\n";
                for (const auto& s : scores) {
                    csv += graph.node(s.edge.first).name + "," +
                           graph.node(s.edge.second).name + ",";
                    for (size_t i = 0; i < s.witness.size(); ++i) {
                        if (i > 0) csv += " ";
                        csv += graph.node(s.witness[i]).name;
                    }
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), ",%.17g\n", s.p_value);
                    csv += buf;
                }
                write_text(o.scores_out, csv);
                manifest.add_output(o.scores_out);
            }
        }
        if (o.expand_alpha) {
            ExpandConfig cfg;
            cfg.alpha = *o.expand_alpha;
            const ExpandResult r = expand_edges(graph, *test, cfg, prior_ptr);
            std::cout << "expand: added " << r.added.size() << " edges\n";
            graph = r.graph;
        }

        save_graph(o.out, GraphDocument{graph, in_doc.forbidden_edges});
        manifest.add_output(o.out);
        manifest.write(o.out + ".manifest.json");
        std::cout << "nodes: " << graph.node_count() << ", edges: " << graph.edge_count()
                  << "\n";
    });

    // ------------------------------------------------------------------- prior
    auto* pri = app.add_subcommand("prior", "elicit a prior graph from a language model");
    struct PriorOpts {
        std::string graph_path, out, strategy;
        int retries = 2;
        LlmOpts llm;
    };
    auto pri_opts = std::make_shared<PriorOpts>();
    {
        pri->add_option("--graph", pri_opts->graph_path,
                        "graph document supplying variable names and descriptions")
            ->required();
        pri->add_option("--strategy", pri_opts->strategy, "pairwise or bfs")
            ->required()
            ->check(CLI::IsMember({"pairwise", "bfs"}));
        pri->add_option("--retries", pri_opts->retries,
                        "extra attempts per unparseable pairwise answer");
        pri_opts->llm.attach(pri);
        pri->add_option("--out", pri_opts->out, "output prior graph document")->required();
    }
    pri->callback([pri_opts, &argvv]() {
        const PriorOpts& o = *pri_opts;
        RunManifest manifest("prior", argvv);
        manifest.add_input(o.graph_path);
        const GraphDocument doc = load_graph(o.graph_path);
        const llm::LlmConfig cfg = o.llm.resolve();
        const auto client = llm::make_client(cfg);
        const llm::PromptLibrary lib = llm::PromptLibrary::load(llm::default_assets_dir());

        const llm::PriorResult result =
            o.strategy == "pairwise"
                ? llm::pairwise_prior(doc.graph.nodes(), *client, lib, o.retries)
                : llm::bfs_prior(doc.graph.nodes(), *client, lib);

        save_graph(o.out, GraphDocument{result.graph, {}});
        manifest.add_output(o.out);
        manifest.set_option("strategy", o.strategy);
        manifest.set_option("model", cfg.model);
        manifest.set_option("offline", cfg.offline);
        manifest.write(o.out + ".manifest.json");

        std::cout << "prompts: " << result.stats.prompts
                  << ", parse failures: " << result.stats.parse_failures
                  << ", edges: " << result.graph.edge_count() << "\n";
        for (const auto& note : result.stats.notes) {
            std::cerr << "note: " << note << "\n";
        }
    });

    // ----------------------------------------------------------------- memtest
    auto* mem = app.add_subcommand("memtest", "benchmark-graph memorization probe");
    struct MemOpts {
        std::string graph_path, out, kind = "m1", dataset_name;
        double reveal_frac = 0.25;
        std::uint64_t seed = 0;
        LlmOpts llm;
    };
    auto mem_opts = std::make_shared<MemOpts>();
    {
        mem->add_option("--graph", mem_opts->graph_path, "reference graph document")
            ->required();
        mem->add_option("--kind", mem_opts->kind, "m1 (nodes), m2 (edges), m3 (both)")
            ->check(CLI::IsMember({"m1", "m2", "m3"}));
        mem->add_option("--reveal-frac,--alpha", mem_opts->reveal_frac,
                        "fraction of items revealed in the prompt");
        mem->add_option("--dataset-name", mem_opts->dataset_name,
                        "name the prompt refers to (default: graph name)");
        mem->add_option("--seed", mem_opts->seed, "split seed");
        mem_opts->llm.attach(mem);
        mem->add_option("--out", mem_opts->out, "write the score report JSON here");
    }
    mem->callback([mem_opts, &argvv]() {
        const MemOpts& o = *mem_opts;
        RunManifest manifest("memtest", argvv);
        manifest.set_seed(o.seed);
        manifest.add_input(o.graph_path);
        const GraphDocument doc = load_graph(o.graph_path);
        const llm::MemKind kind = o.kind == "m1"   ? llm::MemKind::m1
                                  : o.kind == "m2" ? llm::MemKind::m2
                                                   : llm::MemKind::m3;
        const std::string dataset =
            o.dataset_name.empty() ? doc.graph.name() : o.dataset_name;
        const llm::MemTask task =
            llm::split_for_mem(doc.graph, kind, o.reveal_frac, o.seed, dataset);
        const llm::PromptLibrary lib = llm::PromptLibrary::load(llm::default_assets_dir());
        const std::string prompt = llm::render_mem_prompt(lib, task);

        const llm::LlmConfig cfg = o.llm.resolve();
        const auto client = llm::make_client(cfg);
        const std::string response = client->complete(prompt);
        const llm::MemScore score = llm::score_mem(response, task);

        nlohmann::ordered_json report;
        report["kind"] = o.kind;
        report["dataset"] = dataset;
        report["reveal_frac"] = o.reveal_frac;
        report["seed"] = o.seed;
        report["parse_ok"] = score.parse_ok;
        auto counts = [](const llm::PrfCounts& c) {
            return nlohmann::ordered_json{{"tp", c.tp},           {"fp", c.fp},
                                          {"fn", c.fn},           {"precision", c.precision},
                                          {"recall", c.recall},   {"f1", c.f1}};
        };
        if (kind != llm::MemKind::m2) report["nodes"] = counts(score.nodes);
        if (kind != llm::MemKind::m1) report["edges"] = counts(score.edges);
        if (!o.out.empty()) {
            write_text(o.out, report.dump(2) + "\n");
            manifest.add_output(o.out);
            manifest.write(o.out + ".manifest.json");
        }

        std::cout << "parse_ok: " << (score.parse_ok ? "true" : "false") << "\n";
        if (kind != llm::MemKind::m2) {
            std::cout << "nodes precision: " << fmt(score.nodes.precision)
                      << ", recall: " << fmt(score.nodes.recall)
                      << ", f1: " << fmt(score.nodes.f1) << "\n";
        }
        if (kind != llm::MemKind::m1) {
            std::cout << "edges precision: " << fmt(score.edges.precision)
                      << ", recall: " << fmt(score.edges.recall)
                      << ", f1: " << fmt(score.edges.f1) << "\n";
        }
    });

    // ---------------------------------------------------------------- evaluate
    auto* eva = app.add_subcommand("evaluate", "score a predicted graph against a reference");
    struct EvalOpts {
        std::string pred_path, truth_path, mode = "directed_strict", out;
        bool check_forbidden = false;
    };
    auto eva_opts = std::make_shared<EvalOpts>();
    {
        eva->add_option("--pred", eva_opts->pred_path, "predicted graph document")->required();
        eva->add_option("--truth", eva_opts->truth_path, "reference graph document")
            ->required();
        eva->add_option("--mode", eva_opts->mode,
                        "directed_strict, skeleton, or cpdag_aware")
            ->check(CLI::IsMember({"directed_strict", "skeleton", "cpdag_aware"}));
        eva->add_flag("--check-forbidden", eva_opts->check_forbidden,
                      "also report violations of the reference's forbidden edges");
        eva->add_option("--out", eva_opts->out, "write the report JSON here");
    }
    eva->callback([eva_opts, &argvv]() {
        const EvalOpts& o = *eva_opts;
        RunManifest manifest("evaluate", argvv);
        manifest.add_input(o.pred_path);
        manifest.add_input(o.truth_path);
        const GraphDocument pred = load_graph(o.pred_path);
        const GraphDocument truth = load_graph(o.truth_path);
        const EvalReport report =
            edge_metrics(pred.graph, truth.graph, match_mode_from_string(o.mode));

        std::optional<ComplianceReport> compliance;
        if (o.check_forbidden) {
            std::vector<std::pair<std::string, std::string>> forbidden;
            for (const auto& [s, d] : truth.forbidden_edges) {
                forbidden.emplace_back(truth.graph.node(s).name, truth.graph.node(d).name);
            }
            compliance = negative_compliance(pred.graph, forbidden);
        }

        nlohmann::ordered_json j;
        j["mode"] = o.mode;
        j["tp"] = report.tp;
        j["fp"] = report.fp;
        j["fn"] = report.fn;
        j["precision"] = report.precision;
        j["recall"] = report.recall;
        j["f1"] = report.f1;
        if (compliance) {
            j["forbidden_violations"] = nlohmann::ordered_json::array();
            for (const auto& [s, d] : compliance->violations) {
                j["forbidden_violations"].push_back({s, d});
            }
        }
        if (!o.out.empty()) {
            write_text(o.out, j.dump(2) + "\n");
            manifest.add_output(o.out);
            manifest.write(o.out + ".manifest.json");
        }

        std::cout << "mode: " << o.mode << "\n"
                  << "tp: " << report.tp << ", fp: " << report.fp << ", fn: " << report.fn
                  << "\n"
                  << "precision: " << fmt(report.precision)
                  << ", recall: " << fmt(report.recall) << ", f1: " << fmt(report.f1)
                  << "\n";
        if (compliance) {
            std::cout << "forbidden violations: " << compliance->violations.size() << "\n";
        }
    });

    // ------------------------------------------------------------------- stats
    auto* sta = app.add_subcommand("stats", "summarize a graph document");
    auto sta_path = std::make_shared<std::string>();
    sta->add_option("graph", *sta_path, "graph document")->required();
    sta->callback([sta_path]() {
        const GraphDocument doc = load_graph(*sta_path);
        const GraphStats s = graph_stats(doc.graph);
        const GraphStats su = graph_stats(doc.graph, /*unshielded_only=*/true);
        std::cout << "nodes: " << s.n_nodes << ", edges: " << s.n_edges << "\n"
                  << "directed: " << doc.graph.directed_edges().size()
                  << ", undirected: " << doc.graph.undirected_edges().size() << "\n"
                  << "colliders: " << s.n_colliders << " (unshielded: " << su.n_colliders
                  << ")\n"
                  << "in-degree min/median/max: " << s.in_degree_min << "/"
                  << s.in_degree_median << "/" << s.in_degree_max << "\n";
        if (s.longest_directed_path) {
            std::cout << "longest directed path: " << *s.longest_directed_path << "\n";
        } else {
            std::cout << "longest directed path: n/a (directed cycle)\n";
        }
    });

    // ------------------------------------------------------------------- bench
    auto* ben = app.add_subcommand("bench", "run a method x dataset evaluation grid");
    struct BenchOpts {
        std::string config, out_dir = ".";
    };
    auto ben_opts = std::make_shared<BenchOpts>();
    ben->add_option("--config", ben_opts->config, "grid config JSON")->required();
    ben->add_option("--out-dir", ben_opts->out_dir, "directory for bench outputs");
    ben->callback([ben_opts, &argvv]() {
        const BenchOpts& o = *ben_opts;
        RunManifest manifest("bench", argvv);
        manifest.add_input(o.config);
        const BenchResult result = run_bench_matrix(o.config);
        const std::string csv = o.out_dir + "/bench.csv";
        const std::string md = o.out_dir + "/bench.md";
        const std::string prov = o.out_dir + "/bench_provenance.json";
        write_text(csv, result.csv);
        write_text(md, result.markdown);
        write_text(prov, result.provenance_json);
        manifest.add_output(csv);
        manifest.add_output(md);
        manifest.add_output(prov);
        manifest.write(o.out_dir + "/bench.manifest.json");
        std::cout << result.markdown;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    } catch (const CausalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
