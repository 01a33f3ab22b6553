#include "sng/chat.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef SNG_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

namespace sng {

using nlohmann::json;

const std::string& build_system_prompt() {
    static const std::string prompt =
        "You are a scientist specialising in chemistry and drug design. "
        "Your task is to generate valid SMILES strings as a comma-separated list inside square "
        "brackets. "
        "Return the response as plain text without any formatting, backticks, or explanations. "
        "The response must be formatted exactly as follows: [SMILES1, SMILES2, ...]. "
        "Avoid any extra text or explanations.";
    return prompt;
}

std::string render_candidate_list(const std::vector<Instance>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += items[i];
    }
    return out + "]";
}

std::string build_user_prompt(PromptMode mode, const std::vector<Instance>& positives,
                              const std::vector<Instance>& feasible_context, std::size_t s) {
    if (mode == PromptMode::Seeded && positives.empty())
        throw std::invalid_argument("seeded prompt requires positive examples");
    std::string prompt = "Generate up to " + std::to_string(s) + " novel valid molecules";
    if (mode == PromptMode::Seeded)
        prompt += " similar to the following positive molecules: " + render_candidate_list(positives);
    if (!feasible_context.empty())
        prompt += ". Additionally, consider these previously generated feasible molecules: " +
                  render_candidate_list(feasible_context) + ".";
    return prompt;
}

std::optional<std::vector<Instance>> parse_candidate_list(const std::string& text) {
    const auto open = text.find('[');
    if (open == std::string::npos) return std::nullopt;
    std::size_t depth = 0, close = std::string::npos;
    for (std::size_t i = open; i < text.size(); ++i) {
        if (text[i] == '[') ++depth;
        if (text[i] == ']' && --depth == 0) {
            close = i;
            break;
        }
    }
    if (close == std::string::npos) return std::nullopt;

    const std::string inner = text.substr(open + 1, close - open - 1);
    std::vector<Instance> items;
    std::size_t start = 0;
    while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        if (comma == std::string::npos) comma = inner.size();
        std::string item = inner.substr(start, comma - start);
        const auto a = item.find_first_not_of(" \t\r\n");
        if (a != std::string::npos) {
            const auto b = item.find_last_not_of(" \t\r\n");
            items.push_back(item.substr(a, b - a + 1));
        }
        start = comma + 1;
    }
    return items;
}

std::string request_digest(const std::string& path, const std::string& body) {
    // FNV-1a 64, printed as hex; stable across runs and builds
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix(path);
    mix("\n");
    mix(body);
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

namespace {

struct ParsedUrl {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path part of the base url
};

ParsedUrl split_base_url(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_start = base_url.find('/', host_start);
    if (path_start == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

class HttplibTransport final : public HttpTransport {
public:
    HttplibTransport(std::string origin, long timeout_s) : origin_(std::move(origin)) {
        client_ = std::make_unique<httplib::Client>(origin_);
        client_->set_connection_timeout(timeout_s, 0);
        client_->set_read_timeout(timeout_s, 0);
    }

    HttpResponse post(const std::string& path, const std::string& body,
                      const HttpHeaders& headers) override {
        httplib::Headers h(headers.begin(), headers.end());
        auto res = client_->Post(path, h, body, "application/json");
        if (!res) throw BackendError("http transport failure: " + httplib::to_string(res.error()));
        return {res->status, res->body};
    }

private:
    std::string origin_;
    std::unique_ptr<httplib::Client> client_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url, long timeout_s) {
    return std::make_unique<HttplibTransport>(split_base_url(base_url).origin, timeout_s);
}

RecordedSession RecordedSession::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw BackendError("cannot open recorded session: " + path);
    json j = json::parse(f);
    RecordedSession s;
    for (const auto& e : j)
        s.entries.push_back({e.at("digest").get<std::string>(), e.at("body").get<std::string>()});
    return s;
}

void RecordedSession::save(const std::string& path) const {
    json j = json::array();
    for (const auto& e : entries) j.push_back({{"digest", e.digest}, {"body", e.body}});
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

HttpResponse RecordingTransport::post(const std::string& path, const std::string& body,
                                      const HttpHeaders& headers) {
    const HttpResponse res = inner_->post(path, body, headers);
    session_.entries.push_back({request_digest(path, body), res.body});
    return res;
}

HttpResponse ReplayTransport::post(const std::string& path, const std::string& body,
                                   const HttpHeaders&) {
    if (next_ >= session_.entries.size())
        throw BackendError("replay session exhausted");
    const auto& entry = session_.entries[next_];
    if (entry.digest != request_digest(path, body))
        throw BackendError("replay digest mismatch at entry " + std::to_string(next_));
    ++next_;
    return {200, entry.body};
}

ChatBackend::ChatBackend(ChatConfig cfg, std::unique_ptr<HttpTransport> transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {
    if (cfg_.system_prompt.empty()) cfg_.system_prompt = build_system_prompt();
}

std::string ChatBackend::request_body(const GeneratorContext& context, std::size_t count) const {
    const PromptSpec spec = build_prompt(context, count);
    const PromptMode mode = spec.seed_examples.empty() ? PromptMode::Unseeded : PromptMode::Seeded;
    json body{
        {"model", cfg_.model},
        {"temperature", cfg_.temperature},
        {"max_tokens", cfg_.max_tokens_per_sample * count},
        {"messages",
         json::array({{{"role", "system"}, {"content", cfg_.system_prompt}},
                      {{"role", "user"},
                       {"content",
                        build_user_prompt(mode, spec.seed_examples, spec.feasible, count)}}})},
    };
    return body.dump();
}

std::vector<Instance> ChatBackend::sample(const GeneratorContext& context, std::size_t count,
                                          std::uint64_t /*seed*/) {
    const char* key = std::getenv(cfg_.api_key_env.c_str());
    if (!key || !*key)
        throw BackendError("API key environment variable not set: " + cfg_.api_key_env);

    const std::string body = request_body(context, count);
    const HttpHeaders headers{{"Authorization", std::string("Bearer ") + key}};
    const std::string path = "/chat/completions";

    HttpResponse res;
    std::size_t attempt = 0;
    for (;;) {
        try {
            res = transport_->post(path, body, headers);
            if (res.status >= 200 && res.status < 300) break;
            if (attempt >= cfg_.retries)
                throw BackendError("chat completion failed with HTTP " +
                                   std::to_string(res.status));
        } catch (const BackendError&) {
            if (attempt >= cfg_.retries) throw;
        }
        ++attempt;
    }

    std::string content;
    try {
        content = json::parse(res.body).at("choices").at(0).at("message").at("content");
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed chat response: ") + e.what());
    }
    auto items = parse_candidate_list(content);
    if (!items) {
        std::cerr << "sng: warning: no candidate list in chat response\n";
        return {};
    }
    if (items->size() > count) items->resize(count);
    return *items;
}

}  // namespace sng
