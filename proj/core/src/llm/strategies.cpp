#include "causalkit/llm/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "causalkit/errors.hpp"
#include "causalkit/llm/listparse.hpp"

namespace causal::llm {

namespace {

std::string normalize(const std::string& s) {
    std::string t = trim(s);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return t;
}

std::vector<std::pair<std::string, std::string>> variable_pairs(
    const std::vector<Node>& variables) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(variables.size());
    for (const auto& v : variables) out.emplace_back(v.name, v.description);
    return out;
}

}  // namespace

PriorResult pairwise_prior(const std::vector<Node>& variables, ChatClient& client,
                           const PromptLibrary& lib, int retries) {
    if (retries < 0) {
        throw StructuralError("retry count must be non-negative");
    }
    PriorResult result{CausalGraph("pairwise_prior", variables), {}};
    const int n = static_cast<int>(variables.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::map<std::string, std::string> slots;
            slots["a_name"] = variables[i].name;
            slots["a_desc"] =
                variables[i].description.empty() ? "" : ": " + variables[i].description;
            slots["b_name"] = variables[j].name;
            slots["b_desc"] =
                variables[j].description.empty() ? "" : ": " + variables[j].description;
            const std::string prompt = lib.render("pairwise", slots);

            std::optional<PairVerdict> verdict;
            for (int attempt = 0; attempt <= retries && !verdict; ++attempt) {
                ++result.stats.prompts;
                verdict = parse_pair_verdict(client.complete(prompt));
                if (!verdict) {
                    ++result.stats.parse_failures;
                }
            }
            if (!verdict) {
                result.stats.notes.push_back("skipped pair " + variables[i].name + " / " +
                                             variables[j].name + ": unparseable response");
                continue;
            }
            if (*verdict == PairVerdict::a_to_b) {
                result.graph.add_directed(i, j);
            } else if (*verdict == PairVerdict::b_to_a) {
                result.graph.add_directed(j, i);
            }
        }
    }
    return result;
}

PriorResult bfs_prior(const std::vector<Node>& variables, ChatClient& client,
                      const PromptLibrary& lib) {
    PriorResult result{CausalGraph("bfs_prior", variables), {}};
    const int n = static_cast<int>(variables.size());
    if (n == 0) {
        return result;
    }
    const int budget = 2 * n + 1;

    std::map<std::string, int> by_name;
    for (int i = 0; i < n; ++i) {
        by_name[normalize(variables[i].name)] = i;
    }

    // Issues one completion inside the budget; nullopt means the budget is
    // exhausted and the walk must stop where it stands.
    auto ask = [&](const std::string& prompt) -> std::optional<std::string> {
        if (result.stats.prompts >= budget) {
            return std::nullopt;
        }
        ++result.stats.prompts;
        return client.complete(prompt);
    };

    // One parse retry per question; a second malformed answer abandons it.
    auto ask_names = [&](const std::string& prompt,
                         const char* what) -> std::optional<std::vector<std::string>> {
        for (int attempt = 0; attempt < 2; ++attempt) {
            const auto response = ask(prompt);
            if (!response) {
                result.stats.notes.push_back(std::string("budget exhausted at ") + what);
                return std::nullopt;
            }
            if (auto parsed = parse_name_list(*response)) {
                return parsed;
            }
            ++result.stats.parse_failures;
        }
        result.stats.notes.push_back(std::string("abandoned ") + what +
                                     ": unparseable response");
        return std::nullopt;
    };

    // Maps response names onto variable indices, dropping strangers and
    // duplicates but keeping response order; `exclude` guards against a node
    // naming itself as its own effect.
    auto resolve = [&](const std::vector<std::string>& raw, int exclude) {
        std::vector<int> out;
        std::set<int> seen;
        for (const auto& name : raw) {
            const auto it = by_name.find(normalize(name));
            if (it == by_name.end()) {
                result.stats.notes.push_back("dropped unknown name '" + trim(name) + "'");
                continue;
            }
            if (it->second == exclude || !seen.insert(it->second).second) {
                continue;
            }
            out.push_back(it->second);
        }
        return out;
    };

    const std::string variable_block = render_variable_block(variable_pairs(variables));

    const auto roots_raw =
        ask_names(lib.render("bfs_roots", {{"variables", variable_block}}), "root query");
    if (!roots_raw) {
        return result;
    }

    std::deque<int> frontier;
    std::set<int> visited;
    for (int v : resolve(*roots_raw, -1)) {
        if (visited.insert(v).second) {
            frontier.push_back(v);
        }
    }

    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        if (n == 1) {
            break;  // nothing to expand toward
        }
        const auto raw = ask_names(lib.render("bfs_expand", {{"variables", variable_block},
                                                             {"node", variables[v].name}}),
                                   "expansion query");
        if (!raw) {
            if (result.stats.prompts >= budget) {
                break;
            }
            continue;
        }
        for (int w : resolve(*raw, v)) {
            if (!result.graph.adjacent(v, w)) {
                result.graph.add_directed(v, w);
            }
            if (visited.insert(w).second) {
                frontier.push_back(w);
            }
        }
    }
    return result;
}

}  // namespace causal::llm
