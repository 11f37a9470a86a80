#ifndef CAUSALKIT_MANIFEST_HPP
#define CAUSALKIT_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace causal {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility sidecar written next to every artifact a command produces:
// the exact invocation, the resolved options (defaults included), the seeds,
// and a SHA-256 digest of every input file. Re-running the recorded command
// on inputs with the recorded digests yields byte-identical outputs.
class RunManifest {
public:
    RunManifest(std::string command, std::vector<std::string> argv);

    void set_option(const std::string& key, const std::string& value);
    void set_option(const std::string& key, double value);
    void set_option(const std::string& key, int value);
    void set_option(const std::string& key, bool value);
    void set_seed(std::uint64_t seed);

    // Records the file's digest now, so later modification of the input does
    // not retroactively change the manifest.
    void add_input(const std::string& path);
    void add_output(const std::string& path);

    // Serializes to JSON (trailing newline included) at `path`.
    void write(const std::string& path) const;
    std::string to_json() const;

private:
    std::string command_;
    std::vector<std::string> argv_;
    std::string started_at_;  // UTC, RFC 3339
    std::map<std::string, std::string> options_;
    bool has_seed_ = false;
    std::uint64_t seed_ = 0;
    std::vector<std::pair<std::string, std::string>> inputs_;  // (path, sha256)
    std::vector<std::string> outputs_;
};

}  // namespace causal

#endif
