#ifndef CAUSALKIT_LLM_PROMPTS_HPP
#define CAUSALKIT_LLM_PROMPTS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace causal::llm {

// Prompt templates are plain text files under <assets>/prompts. They are part
// of the library's contract: tests snapshot rendered prompts byte for byte, so
// edits here are behavior changes, not copy tweaks.
//
// A template slot is written {slot_name}. Rendering substitutes exactly the
// slots the caller provides; braces that do not form a provided slot stay
// literal, which lets templates show brace-delimited answer formats.
class PromptLibrary {
public:
    // Loads every *.txt file in <assets_dir>/prompts, keyed by file stem. A
    // single trailing newline (if present) is stripped from each file, so the
    // bytes sent to the model do not depend on editor newline conventions.
    static PromptLibrary load(const std::string& assets_dir);

    bool has(const std::string& name) const { return templates_.count(name) != 0; }
    const std::string& raw(const std::string& name) const;
    std::string render(const std::string& name,
                       const std::map<std::string, std::string>& slots) const;

private:
    std::map<std::string, std::string> templates_;
};

// Asset root resolution: CAUSALKIT_ASSETS_DIR when set, otherwise the source
// tree location baked in at compile time. Keeps installed and in-tree runs on
// the same templates.
std::string default_assets_dir();

// ['a', 'b'] with single quotes, matching the answer format the prompts ask
// the model to produce.
std::string render_name_list(const std::vector<std::string>& names);

// [['a', 'b'], ['c', 'd']], source-first directed pairs.
std::string render_edge_list(const std::vector<std::pair<std::string, std::string>>& edges);

// One "- name: description" line per variable (": description" omitted when
// empty); used by the prompts that enumerate a variable pool.
std::string render_variable_block(
    const std::vector<std::pair<std::string, std::string>>& vars);

}  // namespace causal::llm

#endif
