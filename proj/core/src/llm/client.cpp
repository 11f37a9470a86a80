#include "causalkit/llm/client.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "causalkit/errors.hpp"
#include "causalkit/sha256.hpp"

namespace causal::llm {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

LlmConfig LlmConfig::from_env() {
    LlmConfig cfg;
    if (const char* v = std::getenv("CAUSALKIT_LLM_ENDPOINT")) cfg.endpoint = v;
    if (const char* v = std::getenv("CAUSALKIT_LLM_API_KEY")) cfg.api_key = v;
    if (const char* v = std::getenv("CAUSALKIT_LLM_MODEL")) cfg.model = v;
    return cfg;
}

std::string cache_key(const std::string& model, double temperature, const std::string& prompt) {
    ordered_json j;
    j["model"] = model;
    j["temperature"] = temperature;
    j["prompt"] = prompt;
    return sha256_hex(j.dump());
}

ResponseCache::ResponseCache(std::string dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        throw IoError("cannot create cache directory " + dir_ + ": " + ec.message());
    }
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
    std::ifstream in(fs::path(dir_) / (key + ".txt"), std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream body;
    body << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure in cache entry " + key);
    }
    return body.str();
}

void ResponseCache::store(const std::string& key, const std::string& response) const {
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmp_name;
    tmp_name << key << ".tmp." << ::getpid() << "." << counter.fetch_add(1);
    const fs::path tmp = fs::path(dir_) / tmp_name.str();
    const fs::path final_path = fs::path(dir_) / (key + ".txt");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write cache temp file " + tmp.string());
        }
        out << response;
        if (!out.flush()) {
            throw IoError("write failure in cache temp file " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot finalize cache entry " + key + ": " + ec.message());
    }
}

namespace {

// Splits a URL into (scheme://host[:port], path). httplib clients are
// constructed from the former and issue requests against the latter.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ParseError("endpoint URL must include a scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpChatClient::HttpChatClient(LlmConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.endpoint.empty()) {
        throw ParseError("HTTP client requires a non-empty endpoint");
    }
    std::tie(base_, path_) = split_url(cfg_.endpoint);
}

std::string HttpChatClient::complete(const std::string& prompt) {
    ordered_json req;
    req["model"] = cfg_.model;
    req["temperature"] = cfg_.temperature;
    req["messages"] = ordered_json::array({ordered_json{{"role", "user"}, {"content", prompt}}});
    const std::string body = req.dump();

    std::string last_error;
    const int attempts = 1 + std::max(0, cfg_.transport_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::seconds(1 << (attempt - 1)));
        }
        httplib::Client http(base_);
        http.set_connection_timeout(cfg_.timeout_seconds, 0);
        http.set_read_timeout(cfg_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!cfg_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + cfg_.api_key);
        }
        auto res = http.Post(path_, headers, body, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            // Client errors other than rate limiting will not improve on retry.
            if (res->status >= 400 && res->status < 500 && res->status != 429) {
                break;
            }
            continue;
        }
        try {
            const auto parsed = ordered_json::parse(res->body);
            return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw TransportError(std::string("malformed completion response: ") + e.what());
        }
    }
    throw TransportError("chat completion failed after " + std::to_string(attempts) +
                         " attempt(s): " + last_error);
}

CachingChatClient::CachingChatClient(std::shared_ptr<ChatClient> inner, const LlmConfig& cfg)
    : inner_(std::move(inner)),
      cache_(cfg.cache_dir),
      offline_(cfg.offline),
      model_(inner_ ? inner_->model() : cfg.model),
      temperature_(inner_ ? inner_->temperature() : cfg.temperature) {
    if (!offline_ && !inner_) {
        throw ParseError("online mode needs a transport client");
    }
}

std::string CachingChatClient::complete(const std::string& prompt) {
    const std::string key = cache_key(model_, temperature_, prompt);
    if (auto hit = cache_.lookup(key)) {
        return *hit;
    }
    if (offline_) {
        throw CacheMissError("offline run missed the response cache, key " + key, key);
    }
    std::string response = inner_->complete(prompt);
    cache_.store(key, response);
    return response;
}

std::shared_ptr<ChatClient> make_client(const LlmConfig& cfg) {
    std::shared_ptr<ChatClient> transport;
    if (!cfg.offline) {
        transport = std::make_shared<HttpChatClient>(cfg);
    }
    return std::make_shared<CachingChatClient>(transport, cfg);
}

}  // namespace causal::llm
