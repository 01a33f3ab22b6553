#pragma once

#include <map>
#include <memory>
#include <optional>

#include "sng/gen.hpp"

namespace sng {

/// The fixed system prompt for molecule generation.
const std::string& build_system_prompt();

enum class PromptMode { Seeded, Unseeded };

/// The user prompt: "Generate up to {s} novel valid molecules", optionally
/// anchored on positives (Seeded) and on previously generated feasible
/// instances. Seeded mode requires a nonempty positives list.
std::string build_user_prompt(PromptMode mode, const std::vector<Instance>& positives,
                              const std::vector<Instance>& feasible_context, std::size_t s);

/// "[a, b, c]"
std::string render_candidate_list(const std::vector<Instance>& items);

/// Extracts the first balanced square-bracket block, splits on commas, trims
/// whitespace and drops empty items. Empty optional when no block exists.
std::optional<std::vector<Instance>> parse_candidate_list(const std::string& text);

struct ChatConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-4o";
    std::string api_key_env = "OPENAI_API_KEY";  // resolved at request time; never stored
    double temperature = 0.7;
    std::size_t max_tokens_per_sample = 128;
    std::size_t retries = 2;
    long timeout_s = 30;
    std::string system_prompt;  // empty = build_system_prompt()
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpHeaders = std::map<std::string, std::string>;

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    /// Throws BackendError on transport failure.
    virtual HttpResponse post(const std::string& path, const std::string& body,
                              const HttpHeaders& headers) = 0;
};

/// Live transport over cpp-httplib; constructed from the base URL's
/// scheme://host[:port] part.
std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url, long timeout_s);

/// Ordered request/response fixture. Replay demands the digests match in
/// order; a mismatch is a BackendError.
struct RecordedSession {
    struct Entry {
        std::string digest;
        std::string body;
    };
    std::vector<Entry> entries;

    static RecordedSession load(const std::string& path);
    void save(const std::string& path) const;
};

std::string request_digest(const std::string& path, const std::string& body);

class RecordingTransport final : public HttpTransport {
public:
    RecordingTransport(std::unique_ptr<HttpTransport> inner, RecordedSession& session)
        : inner_(std::move(inner)), session_(session) {}
    HttpResponse post(const std::string& path, const std::string& body,
                      const HttpHeaders& headers) override;

private:
    std::unique_ptr<HttpTransport> inner_;
    RecordedSession& session_;
};

class ReplayTransport final : public HttpTransport {
public:
    explicit ReplayTransport(RecordedSession session) : session_(std::move(session)) {}
    HttpResponse post(const std::string& path, const std::string& body,
                      const HttpHeaders& headers) override;

private:
    RecordedSession session_;
    std::size_t next_ = 0;
};

/// Chat-completion backend: one POST per draw, the paper's prompts, response
/// parsed as a bracketed candidate list and truncated to the budget.
class ChatBackend final : public GeneratorBackend {
public:
    ChatBackend(ChatConfig cfg, std::unique_ptr<HttpTransport> transport);

    std::vector<Instance> sample(const GeneratorContext& context, std::size_t count,
                                 std::uint64_t seed) override;

    /// The exact request body that `sample` would POST. Exposed for tests and
    /// for recording fixtures.
    std::string request_body(const GeneratorContext& context, std::size_t count) const;

private:
    ChatConfig cfg_;
    std::unique_ptr<HttpTransport> transport_;
};

}  // namespace sng
