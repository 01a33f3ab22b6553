#pragma once

#include <string>

#include "json.hpp"
#include "sng/gen.hpp"
#include "sng/search.hpp"

namespace sng {

/// JSON schemas (documented in the README):
///   FactorSpecification  {"factors":[{"name","lo","hi","direction"},...]}
///   Experiment           {"spec":<factor-spec>, "intervals":[{"lo","hi"},...]}
///   Hypothesis           {"type":"interval","experiment":<experiment>}
///                        {"type":"external","theory_id":<id>}
///   SearchTriple         {"hypothesis":<hypothesis>,"support":[...],"weight":<number>}
/// Non-finite weights serialize as null.

nlohmann::json to_json(const IntervalVector& v);
nlohmann::json to_json(const FactorSpecification& spec);
nlohmann::json to_json(const Experiment& e);
nlohmann::json to_json(const Hypothesis& h);
nlohmann::json to_json(const SearchTriple& t);
nlohmann::json to_json(const IterationRecord& r);
nlohmann::json to_json(const GenOutcome& o);

/// One JSON-lines record per search step.
nlohmann::json step_record_json(const StepRecord& s, const SearchTrace& trace);

IntervalVector interval_vector_from_json(const nlohmann::json& j);
FactorSpecification factor_spec_from_json(const nlohmann::json& j);
Experiment experiment_from_json(const nlohmann::json& j);

/// External theories deserialize by id through a registry.
class TheoryRegistry {
public:
    void add(const Hypothesis& theory);
    Hypothesis resolve(const std::string& id) const;

    /// krk-wfw, always-true, always-false.
    static TheoryRegistry builtin();

private:
    std::map<std::string, Hypothesis> theories_;
};

Hypothesis hypothesis_from_json(const nlohmann::json& j, const TheoryRegistry& registry);

Direction direction_from_string(const std::string& s);
const char* to_string(Direction d);

/// Newline-delimited instance file; blank lines are skipped, CR stripped.
std::vector<Instance> load_instances(const std::string& path);

std::string read_file(const std::string& path);

/// Write-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace sng
