#include "causalkit/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "causalkit/errors.hpp"
#include "causalkit/sha256.hpp"

namespace causal {

namespace {

std::string utc_now_rfc3339() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), started_at_(utc_now_rfc3339()) {}

void RunManifest::set_option(const std::string& key, const std::string& value) {
    options_[key] = value;
}

void RunManifest::set_option(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    options_[key] = buf;
}

void RunManifest::set_option(const std::string& key, int value) {
    options_[key] = std::to_string(value);
}

void RunManifest::set_option(const std::string& key, bool value) {
    options_[key] = value ? "true" : "false";
}

void RunManifest::set_seed(std::uint64_t seed) {
    has_seed_ = true;
    seed_ = seed;
}

void RunManifest::add_input(const std::string& path) {
    inputs_.emplace_back(path, sha256_file_hex(path));
}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "causalkit";
    j["version"] = kVersion;
    j["command"] = command_;
    j["argv"] = argv_;
    j["started_at"] = started_at_;
    if (has_seed_) {
        j["seed"] = seed_;
    }
    j["options"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : options_) {
        j["options"][k] = v;
    }
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : inputs_) {
        j["inputs"].push_back({{"path", path}, {"sha256", digest}});
    }
    j["outputs"] = outputs_;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write manifest " + path);
    }
    out << to_json();
    if (!out.flush()) {
        throw IoError("write failure in manifest " + path);
    }
}

}  // namespace causal
