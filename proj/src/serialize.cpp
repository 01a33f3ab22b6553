#include "sng/serialize.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sng/krk.hpp"

namespace sng {

using nlohmann::json;

namespace {
json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}
}  // namespace

const char* to_string(Direction d) {
    switch (d) {
        case Direction::Maximize: return "maximize";
        case Direction::Minimize: return "minimize";
        case Direction::Free: return "free";
    }
    return "free";
}

Direction direction_from_string(const std::string& s) {
    if (s == "maximize") return Direction::Maximize;
    if (s == "minimize") return Direction::Minimize;
    if (s == "free") return Direction::Free;
    throw std::invalid_argument("unknown direction: " + s);
}

json to_json(const IntervalVector& v) {
    json out = json::array();
    for (const auto& iv : v) out.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    return out;
}

json to_json(const FactorSpecification& spec) {
    json factors = json::array();
    for (std::size_t i = 0; i < spec.arity(); ++i)
        factors.push_back({{"name", spec.factors()[i]},
                           {"lo", spec.bounds()[i].lo},
                           {"hi", spec.bounds()[i].hi},
                           {"direction", to_string(spec.directions()[i])}});
    return {{"factors", factors}};
}

json to_json(const Experiment& e) {
    return {{"spec", to_json(e.spec())}, {"intervals", to_json(e.vector())}};
}

json to_json(const Hypothesis& h) {
    if (h.is_interval())
        return {{"type", "interval"}, {"experiment", to_json(h.as_interval().experiment)}};
    return {{"type", "external"}, {"theory_id", h.as_external().id}};
}

json to_json(const SearchTriple& t) {
    json support = json::array();
    for (const auto& m : t.support.members) support.push_back(m);
    return {{"hypothesis", to_json(t.hypothesis)},
            {"support", support},
            {"weight", number_or_null(t.weight)}};
}

json to_json(const IterationRecord& r) {
    return {{"iteration", r.iteration},
            {"drawn", r.drawn},
            {"accepted_new", r.accepted_new},
            {"accepted_total", r.accepted_total},
            {"rejected", r.rejected},
            {"weight_running", r.weight_running}};
}

json to_json(const GenOutcome& o) {
    json accepted = json::array();
    for (const auto& m : o.accepted.members) accepted.push_back(m);
    return {{"weight", o.weight},
            {"accepted", accepted},
            {"iterations", o.iterations},
            {"sample_budget", o.sample_budget}};
}

json step_record_json(const StepRecord& s, const SearchTrace& trace) {
    json candidates = json::array();
    for (const auto& c : s.candidates) {
        json jc{{"intervals", to_json(c.experiment.vector())},
                {"score", c.scored ? json(c.score) : json(nullptr)},
                {"gen_weight", c.gen_weight},
                {"theta_hat", c.theta_hat},
                {"support_size", c.support_size}};
        if (!c.error.empty()) jc["error"] = c.error;
        candidates.push_back(std::move(jc));
    }
    const auto& chosen = s.candidates[s.chosen_index];
    const bool is_last = !trace.steps.empty() && trace.steps.back().step == s.step;
    return {{"step", s.step},
            {"candidates", candidates},
            {"chosen",
             {{"index", s.chosen_index},
              {"score", number_or_null(s.chosen_score)},
              {"intervals", to_json(chosen.experiment.vector())},
              {"support_size", chosen.support_size},
              {"theta_hat", chosen.theta_hat}}},
            {"improved", s.improved},
            {"stop_reason", is_last ? json(to_string(trace.stop_reason)) : json(nullptr)}};
}

IntervalVector interval_vector_from_json(const json& j) {
    std::vector<Interval> intervals;
    for (const auto& e : j)
        intervals.push_back({e.at("lo").get<double>(), e.at("hi").get<double>()});
    return IntervalVector(std::move(intervals));
}

FactorSpecification factor_spec_from_json(const json& j) {
    std::vector<std::string> names;
    std::vector<Interval> bounds;
    std::vector<Direction> directions;
    for (const auto& f : j.at("factors")) {
        names.push_back(f.at("name").get<std::string>());
        bounds.push_back({f.at("lo").get<double>(), f.at("hi").get<double>()});
        directions.push_back(direction_from_string(f.value("direction", "free")));
    }
    return FactorSpecification(std::move(names), IntervalVector(std::move(bounds)),
                               std::move(directions));
}

Experiment experiment_from_json(const json& j) {
    return Experiment(factor_spec_from_json(j.at("spec")),
                      interval_vector_from_json(j.at("intervals")));
}

void TheoryRegistry::add(const Hypothesis& theory) {
    theories_.emplace(theory.as_external().id, theory);
}

Hypothesis TheoryRegistry::resolve(const std::string& id) const {
    const auto it = theories_.find(id);
    if (it == theories_.end()) throw std::invalid_argument("unknown theory id: " + id);
    return it->second;
}

TheoryRegistry TheoryRegistry::builtin() {
    TheoryRegistry r;
    r.add(krk::wfw_theory_hypothesis());
    r.add(krk::always_false_hypothesis());
    r.add(Hypothesis::external("always-true", [](const Instance&) { return true; },
                               "every instance is feasible"));
    return r;
}

Hypothesis hypothesis_from_json(const json& j, const TheoryRegistry& registry) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "interval") return Hypothesis::interval(experiment_from_json(j.at("experiment")));
    if (type == "external") return registry.resolve(j.at("theory_id").get<std::string>());
    throw std::invalid_argument("unknown hypothesis type: " + type);
}

std::vector<Instance> load_instances(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open instance file: " + path);
    std::vector<Instance> out;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write: " + tmp);
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sng
