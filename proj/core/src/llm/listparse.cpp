#include "causalkit/llm/listparse.hpp"

#include <algorithm>
#include <cctype>

namespace causal::llm {

namespace {

// Minimal recursive-descent cursor over the answer grammar. All entry points
// return false on the first violation; callers translate that into nullopt.
struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool quoted(std::string& out) {
        if (!accept('\'')) return false;
        const size_t end = s.find('\'', pos);
        if (end == std::string::npos) return false;
        out = s.substr(pos, end - pos);
        pos = end + 1;
        return true;
    }

    bool name_list(std::vector<std::string>& out) {
        if (!accept('[')) return false;
        if (accept(']')) return true;
        do {
            std::string item;
            if (!quoted(item)) return false;
            out.push_back(std::move(item));
        } while (accept(','));
        return accept(']');
    }

    bool edge_pair(std::pair<std::string, std::string>& out) {
        if (!accept('[')) return false;
        if (!quoted(out.first)) return false;
        if (!accept(',')) return false;
        if (!quoted(out.second)) return false;
        return accept(']');
    }

    bool edge_list(std::vector<std::pair<std::string, std::string>>& out) {
        if (!accept('[')) return false;
        if (accept(']')) return true;
        do {
            std::pair<std::string, std::string> e;
            if (!edge_pair(e)) return false;
            out.push_back(std::move(e));
        } while (accept(','));
        return accept(']');
    }

    bool keyword(const std::string& kw) {
        std::string got;
        return quoted(got) && got == kw;
    }
};

size_t first_of(const std::string& text, char c) { return text.find(c); }

}  // namespace

std::optional<std::vector<std::string>> parse_name_list(const std::string& text) {
    const size_t start = first_of(text, '[');
    if (start == std::string::npos) return std::nullopt;
    Cursor c{text, start};
    std::vector<std::string> out;
    if (!c.name_list(out)) return std::nullopt;
    return out;
}

std::optional<std::vector<std::pair<std::string, std::string>>> parse_edge_list(
    const std::string& text) {
    const size_t start = first_of(text, '[');
    if (start == std::string::npos) return std::nullopt;
    Cursor c{text, start};
    std::vector<std::pair<std::string, std::string>> out;
    if (!c.edge_list(out)) return std::nullopt;
    return out;
}

std::optional<NodesAndEdges> parse_nodes_and_edges(const std::string& text) {
    const size_t start = first_of(text, '{');
    if (start == std::string::npos) return std::nullopt;
    Cursor c{text, start};
    NodesAndEdges out;
    if (!c.accept('{')) return std::nullopt;
    if (!c.keyword("remaining_nodes")) return std::nullopt;
    if (!c.accept(':')) return std::nullopt;
    if (!c.name_list(out.nodes)) return std::nullopt;
    if (!c.accept(',')) return std::nullopt;
    if (!c.keyword("remaining_edges")) return std::nullopt;
    if (!c.accept(':')) return std::nullopt;
    if (!c.edge_list(out.edges)) return std::nullopt;
    if (!c.accept('}')) return std::nullopt;
    return out;
}

std::optional<PairVerdict> parse_pair_verdict(const std::string& text) {
    std::string lower(text.size(), '\0');
    std::transform(text.begin(), text.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    struct Token {
        const char* text;
        PairVerdict verdict;
    };
    static const Token tokens[] = {
        {"a->b", PairVerdict::a_to_b},
        {"b->a", PairVerdict::b_to_a},
        {"none", PairVerdict::none},
    };
    size_t best_pos = std::string::npos;
    PairVerdict best = PairVerdict::none;
    for (const auto& t : tokens) {
        const size_t p = lower.find(t.text);
        if (p != std::string::npos && p < best_pos) {
            best_pos = p;
            best = t.verdict;
        }
    }
    if (best_pos == std::string::npos) return std::nullopt;
    return best;
}

}  // namespace causal::llm
