#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "sng/chat.hpp"
#include "sng/search.hpp"

namespace sng::cli {

/// Run configuration with Appendix-style defaults. Precedence is
/// flags > config file > defaults.
struct RunConfig {
    std::string domain = "factorspace";  // or "krk"
    std::optional<FactorSpecification> factors;  // default: factorspace defaults

    std::string positives_path;
    std::string negatives_path;
    std::string unlabelled_path;

    std::string backend_kind = "mock";  // mock | chat | replay
    std::string mock_universe;          // "krk-canonical" or an instance file
    double mock_fidelity = 0.0;
    ChatConfig chat;
    std::string session_path;    // replay fixture
    std::string record_to_path;  // record a chat session here

    SearchConfig search;
    double epsilon = 0.0;
    std::uint64_t seed = 1;
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> backend;
    std::optional<double> theta;
    std::optional<std::size_t> steps;
};

RunConfig load_config(const std::string& path, const Overrides& overrides);

/// The fully resolved configuration as JSON; its digest goes into the
/// manifest so a run can be reproduced bit-for-bit.
nlohmann::json resolved_config_json(const RunConfig& cfg);

constexpr const char* kVersion = "0.1.0";

int cmd_gen(const std::string& config_path, const std::string& hypothesis_path,
            const std::string& out_dir, const Overrides& overrides);
int cmd_genmol(const std::string& config_path, const std::string& out_dir,
               const Overrides& overrides);
int cmd_krk(const std::string& subcommand, const std::string& out_dir);

}  // namespace sng::cli
