#include "causalkit/llm/prompts.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "causalkit/errors.hpp"

namespace causal::llm {

namespace fs = std::filesystem;

PromptLibrary PromptLibrary::load(const std::string& assets_dir) {
    const fs::path dir = fs::path(assets_dir) / "prompts";
    if (!fs::is_directory(dir)) {
        throw IoError("prompt directory not found: " + dir.string());
    }
    PromptLibrary lib;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
            continue;
        }
        std::ifstream in(entry.path(), std::ios::binary);
        if (!in) {
            throw IoError("cannot read prompt template " + entry.path().string());
        }
        std::ostringstream body;
        body << in.rdbuf();
        std::string text = body.str();
        if (!text.empty() && text.back() == '\n') {
            text.pop_back();
        }
        lib.templates_[entry.path().stem().string()] = std::move(text);
    }
    if (lib.templates_.empty()) {
        throw IoError("no prompt templates in " + dir.string());
    }
    return lib;
}

const std::string& PromptLibrary::raw(const std::string& name) const {
    const auto it = templates_.find(name);
    if (it == templates_.end()) {
        throw IoError("unknown prompt template: " + name);
    }
    return it->second;
}

std::string PromptLibrary::render(const std::string& name,
                                  const std::map<std::string, std::string>& slots) const {
    std::string out = raw(name);
    for (const auto& [slot, value] : slots) {
        const std::string needle = "{" + slot + "}";
        size_t pos = 0;
        bool found = false;
        while ((pos = out.find(needle, pos)) != std::string::npos) {
            out.replace(pos, needle.size(), value);
            pos += value.size();
            found = true;
        }
        if (!found) {
            throw ParseError("template '" + name + "' has no slot {" + slot + "}");
        }
    }
    return out;
}

std::string default_assets_dir() {
    if (const char* env = std::getenv("CAUSALKIT_ASSETS_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
#ifdef CAUSALKIT_SOURCE_ASSETS_DIR
    return CAUSALKIT_SOURCE_ASSETS_DIR;
#else
    return "assets";
#endif
}

std::string render_name_list(const std::vector<std::string>& names) {
    std::string out = "[";
    for (size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += "'" + names[i] + "'";
    }
    return out + "]";
}

std::string render_edge_list(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::string out = "[";
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i > 0) out += ", ";
        out += "['" + edges[i].first + "', '" + edges[i].second + "']";
    }
    return out + "]";
}

std::string render_variable_block(
    const std::vector<std::pair<std::string, std::string>>& vars) {
    std::string out;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i > 0) out += "\n";
        out += "- " + vars[i].first;
        if (!vars[i].second.empty()) {
            out += ": " + vars[i].second;
        }
    }
    return out;
}

}  // namespace causal::llm
