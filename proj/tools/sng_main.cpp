#include <iostream>

#include "CLI11.hpp"
#include "sng/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sng: symbolic neural generation over interval-constraint hypotheses"};
    app.require_subcommand(1);

    std::string config_path, hypothesis_path, out_dir = "out", krk_sub;
    sng::cli::Overrides overrides;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run configuration file (JSON)");
        cmd->add_option("--out-dir", out_dir, "output directory");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { overrides.seed = v; }, "override the seed");
        cmd->add_option_function<std::string>(
            "--backend", [&](const std::string& v) { overrides.backend = v; },
            "override the backend kind (mock|chat|replay)");
        cmd->add_option_function<double>(
            "--theta", [&](double v) { overrides.theta = v; }, "override the weight threshold");
        cmd->add_option_function<std::size_t>(
            "--steps", [&](std::size_t v) { overrides.steps = v; }, "override the step limit k");
    };

    auto* gen = app.add_subcommand("gen", "run a single Gen loop against a hypothesis");
    add_common(gen);
    gen->add_option("--hypothesis", hypothesis_path, "hypothesis file (JSON)")->required();

    auto* genmol = app.add_subcommand("genmol", "run the full greedy search");
    add_common(genmol);

    auto* krk = app.add_subcommand("krk", "KRK dataset utilities");
    krk->add_option("subcommand", krk_sub, "export | verify")->required();
    krk->add_option("--out-dir", out_dir, "output directory for export");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return sng::cli::cmd_gen(config_path, hypothesis_path, out_dir, overrides);
        if (genmol->parsed()) return sng::cli::cmd_genmol(config_path, out_dir, overrides);
        if (krk->parsed()) return sng::cli::cmd_krk(krk_sub, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "sng: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
