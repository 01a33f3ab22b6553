#include "sng/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sng/backends.hpp"
#include "sng/factorspace.hpp"
#include "sng/krk.hpp"
#include "sng/serialize.hpp"

namespace sng::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

SamplingStrategy strategy_from_string(const std::string& s) {
    if (s == "uniform") return SamplingStrategy::UniformOrthogonal;
    if (s == "fixed-bound") return SamplingStrategy::FixedBound;
    if (s == "latin") return SamplingStrategy::LatinHyperRectangle;
    throw std::invalid_argument("unknown sampling strategy: " + s);
}

const char* to_string(SamplingStrategy s) {
    switch (s) {
        case SamplingStrategy::UniformOrthogonal: return "uniform";
        case SamplingStrategy::FixedBound: return "fixed-bound";
        case SamplingStrategy::LatinHyperRectangle: return "latin";
    }
    return "latin";
}

}  // namespace

RunConfig load_config(const std::string& path, const Overrides& overrides) {
    RunConfig cfg;
    if (!path.empty()) {
        json j = json::parse(read_file(path));
        cfg.domain = j.value("domain", cfg.domain);
        if (j.contains("factors")) cfg.factors = factor_spec_from_json(j);
        if (j.contains("examples")) {
            const auto& e = j.at("examples");
            cfg.positives_path = e.value("positives", "");
            cfg.negatives_path = e.value("negatives", "");
            cfg.unlabelled_path = e.value("unlabelled", "");
        }
        if (j.contains("backend")) {
            const auto& b = j.at("backend");
            cfg.backend_kind = b.value("kind", cfg.backend_kind);
            cfg.mock_universe = b.value("universe", "");
            cfg.mock_fidelity = b.value("fidelity", 0.0);
            cfg.chat.base_url = b.value("base_url", cfg.chat.base_url);
            cfg.chat.model = b.value("model", cfg.chat.model);
            cfg.chat.api_key_env = b.value("api_key_env", cfg.chat.api_key_env);
            cfg.chat.temperature = b.value("temperature", cfg.chat.temperature);
            cfg.chat.max_tokens_per_sample =
                b.value("max_tokens_per_sample", cfg.chat.max_tokens_per_sample);
            cfg.chat.retries = b.value("retries", cfg.chat.retries);
            cfg.chat.timeout_s = b.value("timeout_s", cfg.chat.timeout_s);
            cfg.chat.system_prompt = b.value("system_prompt", "");
            cfg.session_path = b.value("session", "");
            cfg.record_to_path = b.value("record_to", "");
        }
        if (j.contains("search")) {
            const auto& s = j.at("search");
            cfg.search.s_search = s.value("s_search", cfg.search.s_search);
            cfg.search.k = s.value("k", cfg.search.k);
            cfg.search.l = s.value("l", cfg.search.l);
            cfg.search.m = s.value("m", cfg.search.m);
            cfg.search.theta = s.value("theta", cfg.search.theta);
            cfg.search.final_samples = s.value("final_samples", cfg.search.final_samples);
            cfg.search.use_qw_score = s.value("use_qw_score", cfg.search.use_qw_score);
            if (s.contains("strategy"))
                cfg.search.strategy = strategy_from_string(s.at("strategy").get<std::string>());
        }
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.seed = j.value("seed", cfg.seed);
    }
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.backend) cfg.backend_kind = *overrides.backend;
    if (overrides.theta) cfg.search.theta = *overrides.theta;
    if (overrides.steps) cfg.search.k = *overrides.steps;
    cfg.search.seed = cfg.seed;
    if (!cfg.factors && cfg.domain == "factorspace") cfg.factors = factorspace::default_spec();
    return cfg;
}

json resolved_config_json(const RunConfig& cfg) {
    json j{{"domain", cfg.domain},
           {"examples",
            {{"positives", cfg.positives_path},
             {"negatives", cfg.negatives_path},
             {"unlabelled", cfg.unlabelled_path}}},
           {"backend",
            {{"kind", cfg.backend_kind},
             {"universe", cfg.mock_universe},
             {"fidelity", cfg.mock_fidelity},
             {"base_url", cfg.chat.base_url},
             {"model", cfg.chat.model},
             {"api_key_env", cfg.chat.api_key_env},
             {"temperature", cfg.chat.temperature},
             {"max_tokens_per_sample", cfg.chat.max_tokens_per_sample},
             {"retries", cfg.chat.retries},
             {"timeout_s", cfg.chat.timeout_s},
             {"session", cfg.session_path},
             {"record_to", cfg.record_to_path}}},
           {"search",
            {{"s_search", cfg.search.s_search},
             {"k", cfg.search.k},
             {"l", cfg.search.l},
             {"m", cfg.search.m},
             {"theta", cfg.search.theta},
             {"strategy", to_string(cfg.search.strategy)},
             {"final_samples", cfg.search.final_samples},
             {"use_qw_score", cfg.search.use_qw_score}}},
           {"epsilon", cfg.epsilon},
           {"seed", cfg.seed}};
    if (cfg.factors) j["factors"] = to_json(*cfg.factors)["factors"];
    return j;
}

namespace {

struct RunPieces {
    Background background;
    std::unique_ptr<GeneratorBackend> backend;
    LabelledExamples examples;
    QConfig qcfg;
    std::optional<RecordedSession> recording;  // flushed after a successful run
};

std::vector<Instance> load_if(const std::string& path) {
    return path.empty() ? std::vector<Instance>{} : load_instances(path);
}

Universe resolve_mock_universe(const RunConfig& cfg) {
    if (cfg.mock_universe == "krk-canonical" || (cfg.mock_universe.empty() && cfg.domain == "krk"))
        return krk::background().universe;
    if (!cfg.mock_universe.empty())
        return Universe::enumerated(load_instances(cfg.mock_universe));
    if (!cfg.unlabelled_path.empty())
        return Universe::enumerated(load_instances(cfg.unlabelled_path));
    throw std::invalid_argument("mock backend needs a universe (backend.universe or examples.unlabelled)");
}

/// Assembles background, backend, data and scoring config. `condition_on`
/// supplies the mock backend's focus pool when a fidelity is configured.
RunPieces assemble(const RunConfig& cfg, const std::optional<Hypothesis>& condition_on) {
    RunPieces p;
    p.background = cfg.domain == "krk" ? krk::background() : factorspace::background();

    auto positives = load_if(cfg.positives_path);
    auto negatives = load_if(cfg.negatives_path);
    p.examples = LabelledExamples({positives.begin(), positives.end()},
                                  {negatives.begin(), negatives.end()});
    p.qcfg.epsilon = cfg.epsilon;
    p.qcfg.unlabelled = load_if(cfg.unlabelled_path);

    if (cfg.backend_kind == "mock") {
        Universe universe = resolve_mock_universe(cfg);
        if (cfg.domain == "factorspace" && p.background.universe.empty())
            p.background.universe = universe;
        std::vector<Instance> focus;
        if (cfg.mock_fidelity > 0.0 && condition_on && universe.enumerable())
            for (const auto& x : universe.items())
                if (satisfies(*condition_on, x, p.background)) focus.push_back(x);
        p.backend = std::make_unique<MockUniformBackend>(std::move(universe), std::move(focus),
                                                         cfg.mock_fidelity);
    } else if (cfg.backend_kind == "chat") {
        ChatConfig chat = cfg.chat;
        if (chat.system_prompt.empty()) chat.system_prompt = build_system_prompt();
        // fail fast on missing credentials, before any output is written
        const char* key = std::getenv(chat.api_key_env.c_str());
        if (!key || !*key)
            throw std::invalid_argument("API key environment variable not set: " +
                                        chat.api_key_env);
        auto transport = make_httplib_transport(chat.base_url, chat.timeout_s);
        if (!cfg.record_to_path.empty()) {
            p.recording.emplace();
            transport = std::make_unique<RecordingTransport>(std::move(transport), *p.recording);
        }
        p.backend = std::make_unique<ChatBackend>(std::move(chat), std::move(transport));
    } else if (cfg.backend_kind == "replay") {
        if (cfg.session_path.empty())
            throw std::invalid_argument("replay backend needs backend.session");
        p.backend = std::make_unique<ChatBackend>(
            cfg.chat, std::make_unique<ReplayTransport>(RecordedSession::load(cfg.session_path)));
    } else {
        throw std::invalid_argument("unknown backend kind: " + cfg.backend_kind);
    }
    return p;
}

void write_manifest(const fs::path& out_dir, const char* command, const RunConfig& cfg) {
    const json resolved = resolved_config_json(cfg);
    const json manifest{{"command", command},
                        {"config_digest", request_digest(command, resolved.dump())},
                        {"seed", cfg.seed},
                        {"code_version", kVersion},
                        {"config", resolved}};
    atomic_write_file((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

std::string jsonl(const std::vector<json>& records) {
    std::string out;
    for (const auto& r : records) out += r.dump() + "\n";
    return out;
}

}  // namespace

int cmd_gen(const std::string& config_path, const std::string& hypothesis_path,
            const std::string& out_dir, const Overrides& overrides) {
    const RunConfig cfg = load_config(config_path, overrides);
    const Hypothesis h = hypothesis_from_json(json::parse(read_file(hypothesis_path)),
                                              TheoryRegistry::builtin());
    RunPieces p = assemble(cfg, h);

    const std::vector<Instance> seeds(p.examples.positives().begin(),
                                      p.examples.positives().end());
    const GenOutcome outcome =
        run_gen(*p.backend, seeds, p.background, h, cfg.search.l, cfg.search.m, cfg.seed);

    fs::create_directories(out_dir);
    write_manifest(out_dir, "gen", cfg);
    atomic_write_file((fs::path(out_dir) / "result.json").string(),
                      to_json(outcome).dump(2) + "\n");
    std::vector<json> lines;
    for (const auto& rec : outcome.trace) lines.push_back(to_json(rec));
    atomic_write_file((fs::path(out_dir) / "trace.jsonl").string(), jsonl(lines));

    std::ostringstream report;
    report << "command: gen\nhypothesis: " << h.description() << "\niterations: "
           << outcome.iterations << "\nsample budget per iteration: " << outcome.sample_budget
           << "\naccepted: " << outcome.accepted.members.size() << "\nweight: " << outcome.weight
           << "\n";
    atomic_write_file((fs::path(out_dir) / "report.txt").string(), report.str());
    if (p.recording) p.recording->save(cfg.record_to_path);
    std::cout << "gen: accepted " << outcome.accepted.members.size() << " instances, weight "
              << outcome.weight << "\n";
    return 0;
}

int cmd_genmol(const std::string& config_path, const std::string& out_dir,
               const Overrides& overrides) {
    const RunConfig cfg = load_config(config_path, overrides);
    if (!cfg.factors)
        throw std::invalid_argument("genmol needs a factor specification (domain factorspace "
                                    "supplies defaults)");
    const FactorSpecification spec = *cfg.factors;
    const Hypothesis root = make_interval_hypothesis(spec, spec.bounds());
    RunPieces p = assemble(cfg, root);

    const SearchResult result =
        run_genmol(*p.backend, p.examples, p.background, spec, cfg.search, p.qcfg);

    fs::create_directories(out_dir);
    write_manifest(out_dir, "genmol", cfg);
    atomic_write_file((fs::path(out_dir) / "result.json").string(),
                      to_json(result.triple).dump(2) + "\n");
    std::vector<json> lines;
    for (const auto& s : result.trace.steps) lines.push_back(step_record_json(s, result.trace));
    atomic_write_file((fs::path(out_dir) / "trace.jsonl").string(), jsonl(lines));

    std::ostringstream report;
    report << "command: genmol\nstop reason: " << to_string(result.trace.stop_reason)
           << "\nsteps: " << result.trace.steps.size() - 1 << "\nweight: " << result.triple.weight
           << "\nsupport size: " << result.triple.support.members.size() << "\n\nchosen intervals:\n";
    const auto& vec = result.triple.hypothesis.as_interval().experiment.vector();
    for (std::size_t i = 0; i < spec.arity(); ++i)
        report << "  " << spec.factors()[i] << ": [" << vec[i].lo << ", " << vec[i].hi << "]\n";
    report << "\ntheta_hat chain:";
    for (const auto& s : result.trace.steps)
        if (s.improved) report << " " << s.candidates[s.chosen_index].theta_hat;
    report << "\n";
    if (cfg.domain == "factorspace" && !p.examples.positives().empty() &&
        !result.triple.support.members.empty()) {
        double total = 0.0;
        for (const auto& x : result.triple.support.members)
            total += factorspace::jaccard_novelty(x, p.examples.positives());
        report << "mean jaccard vs positives: "
               << total / static_cast<double>(result.triple.support.members.size()) << "\n";
    }
    atomic_write_file((fs::path(out_dir) / "report.txt").string(), report.str());
    if (p.recording) p.recording->save(cfg.record_to_path);
    std::cout << "genmol: " << to_string(result.trace.stop_reason) << ", support "
              << result.triple.support.members.size() << ", weight " << result.triple.weight
              << "\n";
    return 0;
}

int cmd_krk(const std::string& subcommand, const std::string& out_dir) {
    if (subcommand == "export") {
        std::ostringstream csv;
        krk::export_csv(csv);
        fs::create_directories(out_dir);
        const auto path = fs::path(out_dir) / "krk.csv";
        atomic_write_file(path.string(), csv.str());
        std::cout << "wrote " << krk::enumerate_canonical().size() << " rows to " << path.string()
                  << "\n";
        return 0;
    }
    if (subcommand == "verify") {
        const auto rep = krk::theory_extension_report();
        std::cout << "total=" << rep.canonical_total << "\nwfw=" << rep.checkmates
                  << "\ntheory-legal=" << rep.legal_satisfiers.size()
                  << "\ntheory-illegal=" << rep.illegal_satisfiers.size() << "\n";
        const bool ok = rep.canonical_total == 28056 && rep.checkmates == 27 &&
                        rep.legal_satisfiers.size() == 27;
        std::cout << (ok ? "OK" : "MISMATCH") << "\n";
        return ok ? 0 : 1;
    }
    std::cerr << "unknown krk subcommand: " << subcommand << " (expected export|verify)\n";
    return 1;
}

}  // namespace sng::cli
