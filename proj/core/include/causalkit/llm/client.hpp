#ifndef CAUSALKIT_LLM_CLIENT_HPP
#define CAUSALKIT_LLM_CLIENT_HPP

#include <memory>
#include <optional>
#include <string>

namespace causal::llm {

struct LlmConfig {
    std::string endpoint;  // full chat-completions URL, e.g. https://host/v1/chat/completions
    std::string api_key;
    std::string model = "gpt-4o";
    double temperature = 0.0;
    std::string cache_dir = ".llm_cache";
    bool offline = true;  // never touch the network unless explicitly enabled
    int timeout_seconds = 120;
    int transport_retries = 2;  // extra attempts after a failed HTTP call

    // Fills endpoint/api_key/model from CAUSALKIT_LLM_ENDPOINT / _API_KEY / _MODEL
    // when set; other fields keep the defaults above.
    static LlmConfig from_env();
};

// One prompt in, one completion out. Implementations must be safe to call
// repeatedly with the same prompt.
class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
    virtual const std::string& model() const = 0;
    virtual double temperature() const = 0;
};

// Key for the on-disk response cache: SHA-256 over a compact JSON object with
// the fields, in order, "model", "temperature", "prompt". Any change to the
// sampling setup therefore changes every key.
std::string cache_key(const std::string& model, double temperature, const std::string& prompt);

// Flat directory of <key>.txt response files. Writes go through a temp file in
// the same directory followed by a rename, so readers never observe partial
// responses and concurrent writers of the same key are harmless.
class ResponseCache {
public:
    explicit ResponseCache(std::string dir);
    const std::string& dir() const { return dir_; }
    std::optional<std::string> lookup(const std::string& key) const;
    void store(const std::string& key, const std::string& response) const;

private:
    std::string dir_;
};

// Chat-completions client over HTTP(S). Sends {model, temperature, messages}
// and returns choices[0].message.content; anything else is a TransportError.
class HttpChatClient : public ChatClient {
public:
    explicit HttpChatClient(LlmConfig cfg);
    std::string complete(const std::string& prompt) override;
    const std::string& model() const override { return cfg_.model; }
    double temperature() const override { return cfg_.temperature; }

private:
    LlmConfig cfg_;
    std::string base_;  // scheme://host[:port]
    std::string path_;
};

// Cache-through wrapper. Offline mode answers from the cache alone and raises
// CacheMissError (naming the key) on a miss, so runs without network access
// fail loudly instead of silently changing behavior. `inner` may be null in
// offline mode.
class CachingChatClient : public ChatClient {
public:
    CachingChatClient(std::shared_ptr<ChatClient> inner, const LlmConfig& cfg);
    std::string complete(const std::string& prompt) override;
    const std::string& model() const override { return model_; }
    double temperature() const override { return temperature_; }

private:
    std::shared_ptr<ChatClient> inner_;
    ResponseCache cache_;
    bool offline_;
    std::string model_;
    double temperature_;
};

// Builds the client stack implied by `cfg`: HTTP transport wrapped in the
// cache, or a cache-only client when offline.
std::shared_ptr<ChatClient> make_client(const LlmConfig& cfg);

}  // namespace causal::llm

#endif
