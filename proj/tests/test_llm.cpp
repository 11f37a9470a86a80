#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "causalkit/errors.hpp"
#include "causalkit/graph_io.hpp"
#include "causalkit/llm/client.hpp"
#include "causalkit/llm/listparse.hpp"
#include "causalkit/llm/memtest.hpp"
#include "causalkit/llm/prompts.hpp"
#include "causalkit/llm/strategies.hpp"
#include "causalkit/sha256.hpp"
#include "testutil.hpp"

using namespace causal;
using namespace causal::llm;

namespace {

namespace fs = std::filesystem;

// Byte-exact snapshot check. CAUSALKIT_WRITE_GOLDEN=1 regenerates the files;
// a normal run compares and fails on any drift, since prompt bytes are part
// of the cache-key contract.
void check_golden(const std::string& name, const std::string& rendered) {
    const fs::path file = fs::path(CAUSALKIT_GOLDEN_DIR) / (name + ".txt");
    if (std::getenv("CAUSALKIT_WRITE_GOLDEN")) {
        fs::create_directories(file.parent_path());
        testutil::write_file(file.string(), rendered);
        return;
    }
    REQUIRE_MESSAGE(fs::exists(file), "missing golden file ", file.string(),
                    " (regenerate with CAUSALKIT_WRITE_GOLDEN=1)");
    CHECK_MESSAGE(testutil::slurp(file) == rendered, "golden mismatch for ", name);
}

CausalGraph sprinkler() {
    return load_graph(default_assets_dir() + "/graphs/sprinkler.json").graph;
}

std::vector<Node> xvars(int n) {
    std::vector<Node> v;
    for (int i = 1; i <= n; ++i) v.push_back({"X" + std::to_string(i), ""});
    return v;
}

}  // namespace

TEST_CASE("sha256 known vectors") {
    const std::string abc = "abc";
    CHECK(sha256_hex(abc) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("name list parsing") {
    CHECK(parse_name_list("['a', 'b']") == std::vector<std::string>{"a", "b"});
    CHECK(parse_name_list("Sure, here you go: ['x']") == std::vector<std::string>{"x"});
    CHECK(parse_name_list("[]") == std::vector<std::string>{});
    CHECK(parse_name_list("[ 'spaced' ,'tight']") ==
          std::vector<std::string>{"spaced", "tight"});
    CHECK_FALSE(parse_name_list("no brackets at all").has_value());
    CHECK_FALSE(parse_name_list("[a, b]").has_value());        // unquoted
    CHECK_FALSE(parse_name_list("['a'").has_value());          // unterminated
    CHECK_FALSE(parse_name_list("['a' 'b']").has_value());     // missing comma
    CHECK_FALSE(parse_name_list("[\"a\"]").has_value());       // wrong quotes
    // Only the first bracket counts: a malformed first structure is final
    // even when a well-formed list follows.
    CHECK(parse_name_list("[] ignored ['a']") == std::vector<std::string>{});
    CHECK_FALSE(parse_name_list("[oops] then ['a']").has_value());
}

TEST_CASE("edge list parsing") {
    using Edges = std::vector<std::pair<std::string, std::string>>;
    CHECK(parse_edge_list("[['a', 'b'], ['c', 'd']]") ==
          Edges{{"a", "b"}, {"c", "d"}});
    CHECK(parse_edge_list("[]") == Edges{});
    CHECK_FALSE(parse_edge_list("[['a', 'b', 'c']]").has_value());  // triple
    CHECK_FALSE(parse_edge_list("[['a']]").has_value());            // singleton
    CHECK_FALSE(parse_edge_list("['a', 'b']").has_value());         // flat list
}

TEST_CASE("nodes-and-edges parsing") {
    const auto ok = parse_nodes_and_edges(
        "Answer: {'remaining_nodes': ['n1'], 'remaining_edges': [['n1', 'n2']]}");
    REQUIRE(ok.has_value());
    CHECK(ok->nodes == std::vector<std::string>{"n1"});
    CHECK(ok->edges.size() == 1);
    CHECK(ok->edges[0] == std::pair<std::string, std::string>{"n1", "n2"});

    // Keys must appear in exactly the documented order.
    CHECK_FALSE(parse_nodes_and_edges(
                    "{'remaining_edges': [], 'remaining_nodes': []}")
                    .has_value());
    CHECK_FALSE(parse_nodes_and_edges("{'remaining_nodes': []}").has_value());
    CHECK(parse_nodes_and_edges("{'remaining_nodes': [], 'remaining_edges': []}")
              .has_value());
}

TEST_CASE("pair verdict: earliest token wins, case-insensitive") {
    CHECK(parse_pair_verdict("A->B") == PairVerdict::a_to_b);
    CHECK(parse_pair_verdict("'b->a'") == PairVerdict::b_to_a);
    CHECK(parse_pair_verdict("NONE") == PairVerdict::none);
    CHECK(parse_pair_verdict("I lean B->A, though A->B is possible") ==
          PairVerdict::b_to_a);
    CHECK(parse_pair_verdict("none, but if forced: A->B") == PairVerdict::none);
    CHECK_FALSE(parse_pair_verdict("the arrow points rightward").has_value());
}

TEST_CASE("prompt library rendering") {
    const PromptLibrary lib = PromptLibrary::load(default_assets_dir());
    CHECK(lib.has("pairwise"));
    CHECK(lib.has("m1"));
    CHECK_THROWS_AS(lib.raw("no_such_template"), IoError);

    // Only provided slots substitute; unknown braces stay literal.
    const std::string p = lib.render("pairwise", {{"a_name", "Rain"},
                                                  {"a_desc", ""},
                                                  {"b_name", "Wet grass"},
                                                  {"b_desc", ": lawn state"}});
    CHECK(p.find("A = Rain\n") != std::string::npos);
    CHECK(p.find("B = Wet grass: lawn state") != std::string::npos);
    CHECK(p.find("{a_name}") == std::string::npos);

    // Asking to fill a slot the template does not have is an error: it means
    // template and caller disagree about the contract.
    CHECK_THROWS_AS(lib.render("pairwise", {{"zzz", "1"}}), ParseError);

    // The m3 answer-format braces survive rendering untouched.
    const CausalGraph g = sprinkler();
    const MemTask t3 = split_for_mem(g, MemKind::m3, 0.5, 7, "sprinkler");
    const std::string m3 = render_mem_prompt(lib, t3);
    CHECK(m3.find("{'remaining_nodes':") != std::string::npos);
    CHECK(m3.find("{dataset_name}") == std::string::npos);
}

TEST_CASE("list renderers") {
    CHECK(render_name_list({}) == "[]");
    CHECK(render_name_list({"a"}) == "['a']");
    CHECK(render_name_list({"a", "b c"}) == "['a', 'b c']");
    CHECK(render_edge_list({}) == "[]");
    CHECK(render_edge_list({{"a", "b"}, {"c", "d"}}) == "[['a', 'b'], ['c', 'd']]");
    CHECK(render_variable_block({{"x", ""}, {"y", "the cause"}}) == "- x\n- y: the cause");
}

TEST_CASE("memorization splits") {
    const CausalGraph g = sprinkler();  // 4 nodes, 4 edges

    SUBCASE("round-half-up reveal counts") {
        // 4 items: frac 0 -> 0 given; 0.25 -> 1; 0.5 -> 2; 0.74 -> 3
        // (2.96 + 0.5 floors to 3); 1 -> 4.
        auto given_nodes = [&](double f) {
            return split_for_mem(g, MemKind::m1, f, 3, "d").given_nodes.size();
        };
        CHECK(given_nodes(0.0) == 0);
        CHECK(given_nodes(0.25) == 1);
        CHECK(given_nodes(0.5) == 2);
        CHECK(given_nodes(0.74) == 3);
        CHECK(given_nodes(1.0) == 4);
        // Exact half rounds up: 0.375 * 4 = 1.5 -> 2.
        CHECK(given_nodes(0.375) == 2);
    }

    SUBCASE("m1 splits nodes only") {
        const MemTask t = split_for_mem(g, MemKind::m1, 0.5, 9, "d");
        CHECK(t.given_nodes.size() == 2);
        CHECK(t.hidden_nodes.size() == 2);
        CHECK(t.given_edges.empty());
        CHECK(t.hidden_edges.empty());
    }

    SUBCASE("m2 reveals every node and splits edges") {
        const MemTask t = split_for_mem(g, MemKind::m2, 0.25, 9, "d");
        CHECK(t.given_nodes.size() == 4);
        CHECK(t.hidden_nodes.empty());
        CHECK(t.given_edges.size() == 1);
        CHECK(t.hidden_edges.size() == 3);
    }

    SUBCASE("m3 splits both, independently seeded") {
        const MemTask t = split_for_mem(g, MemKind::m3, 0.5, 9, "d");
        CHECK(t.given_nodes.size() + t.hidden_nodes.size() == 4);
        CHECK(t.given_edges.size() + t.hidden_edges.size() == 4);
        CHECK(t.given_nodes.size() == 2);
        CHECK(t.given_edges.size() == 2);
        // The node choice matches m1's at the same seed: edge drawing does
        // not perturb the node stream.
        const MemTask t1 = split_for_mem(g, MemKind::m1, 0.5, 9, "d");
        CHECK(t.given_nodes == t1.given_nodes);
        CHECK(t.hidden_nodes == t1.hidden_nodes);
    }

    SUBCASE("determinism and seed sensitivity") {
        const MemTask a = split_for_mem(g, MemKind::m3, 0.5, 1, "d");
        const MemTask b = split_for_mem(g, MemKind::m3, 0.5, 1, "d");
        CHECK(a.given_nodes == b.given_nodes);
        CHECK(a.given_edges == b.given_edges);
        bool differs = false;
        for (std::uint64_t s = 2; s < 12 && !differs; ++s) {
            const MemTask c = split_for_mem(g, MemKind::m3, 0.5, s, "d");
            differs = c.given_nodes != a.given_nodes || c.given_edges != a.given_edges;
        }
        CHECK(differs);
    }

    SUBCASE("revealed items keep graph order") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const MemTask t = split_for_mem(g, MemKind::m1, 0.5, s, "d");
            std::vector<std::string> all;
            for (const auto& n : g.nodes()) all.push_back(n.name);
            std::vector<std::string> merged;
            std::size_t gi = 0, hi = 0;
            for (const auto& name : all) {
                if (gi < t.given_nodes.size() && t.given_nodes[gi] == name) {
                    ++gi;
                } else if (hi < t.hidden_nodes.size() && t.hidden_nodes[hi] == name) {
                    ++hi;
                }
            }
            CHECK(gi == t.given_nodes.size());
            CHECK(hi == t.hidden_nodes.size());
            (void)merged;
        }
    }

    SUBCASE("validation") {
        CHECK_THROWS_AS(split_for_mem(g, MemKind::m1, 1.5, 0, "d"), StructuralError);
        CausalGraph mixed("m", {{"a", ""}, {"b", ""}});
        mixed.add_undirected(0, 1);
        CHECK_THROWS_AS(split_for_mem(mixed, MemKind::m1, 0.5, 0, "d"), StructuralError);
    }
}

TEST_CASE("memorization scoring") {
    MemTask task;
    task.kind = MemKind::m1;
    task.hidden_nodes = {"alpha", "beta", "gamma"};

    SUBCASE("the 4-of-7 arithmetic") {
        // 4 predictions, 2 correct: precision 1/2, recall 2/3, F1 4/7.
        const MemScore s = score_mem("['alpha', 'beta', 'wrong1', 'wrong2']", task);
        CHECK(s.parse_ok);
        CHECK(s.nodes.tp == 2);
        CHECK(s.nodes.fp == 2);
        CHECK(s.nodes.fn == 1);
        CHECK(s.nodes.precision == doctest::Approx(0.5));
        CHECK(s.nodes.recall == doctest::Approx(2.0 / 3.0));
        CHECK(s.nodes.f1 == doctest::Approx(4.0 / 7.0));
    }

    SUBCASE("duplicates collapse, matching ignores case and padding") {
        const MemScore s = score_mem("['  ALPHA ', 'alpha', 'Beta']", task);
        CHECK(s.nodes.tp == 2);
        CHECK(s.nodes.fp == 0);
        CHECK(s.nodes.fn == 1);
    }

    SUBCASE("unparseable answers score zero with the flag down") {
        const MemScore s = score_mem("I cannot recall this dataset.", task);
        CHECK_FALSE(s.parse_ok);
        CHECK(s.nodes.tp == 0);
        CHECK(s.nodes.precision == 0.0);
        CHECK(s.nodes.f1 == 0.0);
    }

    SUBCASE("empty prediction against empty hidden set is all zeros") {
        MemTask t2;
        t2.kind = MemKind::m1;
        const MemScore s = score_mem("[]", t2);
        CHECK(s.parse_ok);
        CHECK(s.nodes.precision == 0.0);  // 0/0 convention
        CHECK(s.nodes.recall == 0.0);
        CHECK(s.nodes.f1 == 0.0);
    }

    SUBCASE("m3 scores both parts") {
        MemTask t3;
        t3.kind = MemKind::m3;
        t3.hidden_nodes = {"n1"};
        t3.hidden_edges = {{"n1", "n2"}, {"n2", "n3"}};
        const MemScore s = score_mem(
            "{'remaining_nodes': ['n1'], 'remaining_edges': [['N1', 'N2'], ['x', 'y']]}", t3);
        CHECK(s.parse_ok);
        CHECK(s.nodes.tp == 1);
        CHECK(s.nodes.f1 == doctest::Approx(1.0));
        CHECK(s.edges.tp == 1);
        CHECK(s.edges.fp == 1);
        CHECK(s.edges.fn == 1);
        // Direction matters: a reversed edge is no hit.
        const MemScore r = score_mem(
            "{'remaining_nodes': [], 'remaining_edges': [['n2', 'n1']]}", t3);
        CHECK(r.edges.tp == 0);
        CHECK(r.edges.fp == 1);
    }
}

TEST_CASE("prompt snapshots") {
    const PromptLibrary lib = PromptLibrary::load(default_assets_dir());
    const CausalGraph g = sprinkler();

    check_golden("m1_sprinkler",
                 render_mem_prompt(lib, split_for_mem(g, MemKind::m1, 0.5, 7, "sprinkler")));
    check_golden("m2_sprinkler",
                 render_mem_prompt(lib, split_for_mem(g, MemKind::m2, 0.5, 7, "sprinkler")));
    check_golden("m3_sprinkler",
                 render_mem_prompt(lib, split_for_mem(g, MemKind::m3, 0.5, 7, "sprinkler")));

    const auto& nodes = g.nodes();
    check_golden("pairwise_sprinkler",
                 lib.render("pairwise",
                            {{"a_name", nodes[0].name},
                             {"a_desc", nodes[0].description.empty()
                                            ? ""
                                            : ": " + nodes[0].description},
                             {"b_name", nodes[1].name},
                             {"b_desc", nodes[1].description.empty()
                                            ? ""
                                            : ": " + nodes[1].description}}));

    std::vector<std::pair<std::string, std::string>> vars;
    for (const auto& n : nodes) vars.emplace_back(n.name, n.description);
    const std::string block = render_variable_block(vars);
    check_golden("bfs_roots_sprinkler", lib.render("bfs_roots", {{"variables", block}}));
    check_golden("bfs_expand_sprinkler",
                 lib.render("bfs_expand", {{"variables", block}, {"node", nodes[0].name}}));

    // Structural guarantees independent of the snapshot bytes.
    for (MemKind kind : {MemKind::m1, MemKind::m2, MemKind::m3}) {
        const std::string p = render_mem_prompt(lib, split_for_mem(g, kind, 0.5, 7, "sprinkler"));
        const std::string note = "Note: Add bnlearn if it is a bnlearn dataset.";
        REQUIRE(p.size() >= note.size());
        CHECK(p.substr(p.size() - note.size()) == note);
    }
}

TEST_CASE("cache keys") {
    const std::string k = cache_key("m", 0.0, "p");
    CHECK(k.size() == 64);
    CHECK(k == cache_key("m", 0.0, "p"));
    CHECK(k != cache_key("m2", 0.0, "p"));
    CHECK(k != cache_key("m", 0.5, "p"));
    CHECK(k != cache_key("m", 0.0, "p2"));
}

TEST_CASE("response cache round trip") {
    const testutil::TempDir tmp;
    const ResponseCache cache(tmp.file("cache"));
    const std::string key = cache_key("m", 0.0, "hello");
    CHECK_FALSE(cache.lookup(key).has_value());
    cache.store(key, "first\nsecond\n");
    REQUIRE(cache.lookup(key).has_value());
    CHECK(*cache.lookup(key) == "first\nsecond\n");
    // Overwrite is atomic and leaves no temp litter behind.
    cache.store(key, "revised");
    CHECK(*cache.lookup(key) == "revised");
    int files = 0;
    for (const auto& entry : fs::directory_iterator(tmp.file("cache"))) {
        ++files;
        CHECK(entry.path().extension() == ".txt");
    }
    CHECK(files == 1);
}

TEST_CASE("offline client answers from cache or fails loudly") {
    const testutil::TempDir tmp;
    LlmConfig cfg;
    cfg.cache_dir = tmp.file("cache");
    cfg.offline = true;
    cfg.model = "stub-model";
    cfg.temperature = 0.0;

    CachingChatClient offline(nullptr, cfg);
    const std::string prompt = "what causes rain?";
    const std::string key = cache_key("stub-model", 0.0, prompt);
    try {
        offline.complete(prompt);
        FAIL("expected CacheMissError");
    } catch (const CacheMissError& e) {
        CHECK(e.cache_key == key);
        CHECK(std::string(e.what()).find(key) != std::string::npos);
    }

    // Seed the cache by hand; the offline client now answers.
    ResponseCache(cfg.cache_dir).store(key, "clouds");
    CHECK(offline.complete(prompt) == "clouds");
}

TEST_CASE("caching client stores online completions") {
    const testutil::TempDir tmp;
    LlmConfig cfg;
    cfg.cache_dir = tmp.file("cache");
    cfg.offline = false;

    auto inner = std::make_shared<testutil::ScriptedClient>("stub-model");
    inner->push("response one");
    inner->push("SHOULD NEVER BE SENT");
    CachingChatClient client(inner, cfg);
    CHECK(client.complete("q") == "response one");
    // Second call hits the cache: the scripted queue is not consumed.
    CHECK(client.complete("q") == "response one");
    CHECK(inner->prompts.size() == 1);

    // Online mode without a transport is a configuration error.
    CHECK_THROWS_AS(CachingChatClient(nullptr, cfg), ParseError);
}

TEST_CASE("pairwise prior strategy") {
    const PromptLibrary lib = PromptLibrary::load(default_assets_dir());
    std::vector<Node> vars{{"a", "first"}, {"b", ""}, {"c", ""}};

    SUBCASE("verdicts turn into directed edges") {
        testutil::ScriptedClient client;
        client.push("A->B");   // (a, b)
        client.push("B->A");   // (a, c): c -> a
        client.push("none");   // (b, c)
        const PriorResult r = pairwise_prior(vars, client, lib);
        CHECK(r.graph.name() == "pairwise_prior");
        CHECK(r.graph.has_directed(0, 1));
        CHECK(r.graph.has_directed(2, 0));
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.stats.prompts == 3);
        CHECK(r.stats.parse_failures == 0);
        CHECK(r.stats.notes.empty());
        // The description reaches the prompt; missing ones leave no colon.
        CHECK(client.prompts[0].find("A = a: first") != std::string::npos);
        CHECK(client.prompts[0].find("B = b\n") != std::string::npos);
    }

    SUBCASE("a garbled response is retried, then the pair is skipped") {
        testutil::ScriptedClient client;
        client.push("mumble");
        client.push("A->B");   // retry of (a, b) succeeds
        client.push("???");
        client.push("???");
        client.push("???");    // (a, c) exhausts 1 + 2 attempts
        client.push("none");   // (b, c)
        const PriorResult r = pairwise_prior(vars, client, lib, 2);
        CHECK(r.graph.has_directed(0, 1));
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.stats.prompts == 6);
        CHECK(r.stats.parse_failures == 4);
        REQUIRE(r.stats.notes.size() == 1);
        CHECK(r.stats.notes[0].find("a / c") != std::string::npos);
    }

    SUBCASE("budget never exceeds pairs times attempts") {
        testutil::ScriptedClient client;  // default response never parses
        client.set_default("gibberish");
        const PriorResult r = pairwise_prior(vars, client, lib, 2);
        CHECK(r.stats.prompts == 9);  // C(3,2) * (1 + 2)
        CHECK(r.stats.parse_failures == 9);
        CHECK(r.stats.notes.size() == 3);
        CHECK(r.graph.edge_count() == 0);
    }

    SUBCASE("negative retries are rejected") {
        testutil::ScriptedClient client;
        CHECK_THROWS_AS(pairwise_prior(vars, client, lib, -1), StructuralError);
    }
}

TEST_CASE("bfs prior strategy") {
    const PromptLibrary lib = PromptLibrary::load(default_assets_dir());

    SUBCASE("chain discovery uses n + 1 prompts") {
        testutil::ScriptedClient client;
        client.push("['X1']");          // roots
        client.push("['X2']");          // effects of X1
        client.push("['X3']");          // effects of X2
        client.push("[]");              // effects of X3
        const PriorResult r = bfs_prior(xvars(3), client, lib);
        CHECK(r.graph.name() == "bfs_prior");
        CHECK(r.stats.prompts == 4);
        CHECK(r.graph.has_directed(0, 1));
        CHECK(r.graph.has_directed(1, 2));
        CHECK(r.graph.edge_count() == 2);
        CHECK(client.prompts[1].find("'X1'") != std::string::npos);
    }

    SUBCASE("single variable asks only the root question") {
        testutil::ScriptedClient client;
        client.push("['X1']");
        const PriorResult r = bfs_prior(xvars(1), client, lib);
        CHECK(r.stats.prompts == 1);
        CHECK(r.graph.edge_count() == 0);
    }

    SUBCASE("unknown names are dropped with a note") {
        testutil::ScriptedClient client;
        client.push("['X1', 'Flooble']");
        client.push("[]");
        const PriorResult r = bfs_prior(xvars(2), client, lib);
        CHECK(r.graph.edge_count() == 0);
        bool noted = false;
        for (const auto& n : r.stats.notes) {
            if (n.find("Flooble") != std::string::npos) noted = true;
        }
        CHECK(noted);
    }

    SUBCASE("an earlier edge direction is never overwritten") {
        testutil::ScriptedClient client;
        client.push("['X1', 'X2']");  // both roots, both visited
        client.push("['X2']");        // X1 -> X2
        client.push("['X1']");        // back edge is ignored: pair taken
        const PriorResult r = bfs_prior(xvars(2), client, lib);
        CHECK(r.graph.has_directed(0, 1));
        CHECK_FALSE(r.graph.has_directed(1, 0));
        CHECK(r.graph.edge_count() == 1);
    }

    SUBCASE("the 2n + 1 budget is a hard cap") {
        // n = 2, budget 5. Consumption: failed roots (1), good roots (2),
        // failed expansion (3), good expansion (4), failed expansion (5),
        // then the retry hits the cap and the walk stops where it stands.
        testutil::ScriptedClient client;
        client.push("junk");
        client.push("['X1', 'X2']");
        client.push("more junk");
        client.push("['X2']");
        client.push("still junk");
        client.set_default("SHOULD NEVER BE REQUESTED");
        const PriorResult r = bfs_prior(xvars(2), client, lib);
        CHECK(r.stats.prompts == 5);
        CHECK(r.graph.has_directed(0, 1));
        bool noted = false;
        for (const auto& n : r.stats.notes) {
            if (n.find("budget exhausted") != std::string::npos) noted = true;
        }
        CHECK(noted);
        CHECK(client.prompts.size() == 5);
    }

    SUBCASE("an unparseable root answer abandons the walk") {
        testutil::ScriptedClient client;
        client.set_default("no list here");
        const PriorResult r = bfs_prior(xvars(3), client, lib);
        CHECK(r.stats.prompts == 2);  // one retry
        CHECK(r.graph.edge_count() == 0);
        bool noted = false;
        for (const auto& n : r.stats.notes) {
            if (n.find("root query") != std::string::npos) noted = true;
        }
        CHECK(noted);
    }
}
