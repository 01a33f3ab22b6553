#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sng/factor_spec.hpp"

namespace sng {

/// Instances travel as their wire encoding; domains decide what the string
/// means (a KRK tuple, a token string, a SMILES string, ...).
using Instance = std::string;

/// Deterministic factor computation; an empty optional means the value is
/// undefined for this instance (malformed encoding, external tool failure).
using FactorFn = std::function<std::optional<double>(const Instance&)>;

/// An instance source: either a finite enumeration or a seeded sampler.
class Universe {
public:
    Universe() = default;

    static Universe enumerated(std::vector<Instance> items) {
        Universe u;
        u.items_ = std::move(items);
        return u;
    }

    static Universe sampled(std::function<std::vector<Instance>(std::size_t, std::uint64_t)> fn) {
        Universe u;
        u.sampler_ = std::move(fn);
        return u;
    }

    bool enumerable() const { return !items_.empty(); }
    bool empty() const { return items_.empty() && !sampler_; }
    const std::vector<Instance>& items() const { return items_; }

    /// Uniform draws with replacement for enumerated universes; delegated to
    /// the sampler otherwise. Deterministic under the seed.
    std::vector<Instance> sample(std::size_t count, std::uint64_t seed) const;

private:
    std::vector<Instance> items_;
    std::function<std::vector<Instance>(std::size_t, std::uint64_t)> sampler_;
};

/// Background knowledge: the registered factor functions plus a handle on the
/// instance universe.
struct Background {
    std::map<std::string, FactorFn> factors;
    Universe universe;

    /// Throws std::out_of_range for an unregistered factor; a registered
    /// factor that cannot produce a value returns an empty optional.
    std::optional<double> factor_value(const std::string& name, const Instance& x) const {
        auto it = factors.find(name);
        if (it == factors.end())
            throw std::out_of_range("unregistered factor: " + name);
        return it->second(x);
    }
};

/// Interval-constraint hypothesis: an instance satisfies it when every factor
/// value lands in the experiment's interval for that factor.
struct IntervalHypothesis {
    Experiment experiment;

    const FactorSpecification& spec() const { return experiment.spec(); }

    friend bool operator==(const IntervalHypothesis&, const IntervalHypothesis&) = default;
};

/// A domain-provided logical theory with its own membership evaluator.
/// Identified (and serialized) by id only.
struct ExternalTheory {
    std::string id;
    std::function<bool(const Instance&)> membership;
    std::string description;

    friend bool operator==(const ExternalTheory& a, const ExternalTheory& b) {
        return a.id == b.id;
    }
};

class Hypothesis {
public:
    static Hypothesis interval(Experiment e) { return Hypothesis(IntervalHypothesis{std::move(e)}); }

    static Hypothesis external(std::string id, std::function<bool(const Instance&)> membership,
                               std::string description = {}) {
        return Hypothesis(ExternalTheory{std::move(id), std::move(membership), std::move(description)});
    }

    bool is_interval() const { return std::holds_alternative<IntervalHypothesis>(v_); }
    bool is_external() const { return std::holds_alternative<ExternalTheory>(v_); }

    const IntervalHypothesis& as_interval() const { return std::get<IntervalHypothesis>(v_); }
    const ExternalTheory& as_external() const { return std::get<ExternalTheory>(v_); }

    /// Human-readable constraint text, used as generator conditioning.
    std::string description() const;

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

private:
    explicit Hypothesis(std::variant<IntervalHypothesis, ExternalTheory> v) : v_(std::move(v)) {}
    std::variant<IntervalHypothesis, ExternalTheory> v_;
};

/// Builds the interval hypothesis for an experiment over `spec`. Throws when
/// the vector violates the bounds (it would not be an experiment).
Hypothesis make_interval_hypothesis(const FactorSpecification& spec, const IntervalVector& vector);

/// Membership in nvext(h|b). Total and deterministic: an undefined factor
/// value yields false, never an error, so vacuous satisfaction is impossible.
bool satisfies(const Hypothesis& h, const Instance& x, const Background& b);

/// { x in sample : satisfies(h, x, b) }, preserving the carrier's order.
std::vector<Instance> extension_on(const Hypothesis& h, const std::vector<Instance>& sample,
                                   const Background& b);

/// Outcome of comparing two elements of a partial order.
enum class Ordering { Equal, GreaterEq, LessEq, Incomparable };

/// Extensional comparison of hypotheses on a finite carrier (inclusion of
/// extensions). GreaterEq/LessEq are strict in the sense that Equal is
/// reported when the extensions coincide.
Ordering compare_hypotheses(const Hypothesis& h1, const Hypothesis& h2,
                            const std::vector<Instance>& carrier, const Background& b);

/// Verified instances accompanying a hypothesis; every member satisfies the
/// source hypothesis by construction.
struct SupportSet {
    std::set<Instance> members;
    Hypothesis source;
};

/// Restriction reindexing: keep the members that satisfy `target`, rehomed to
/// `target`. Functorial along containment chains.
SupportSet reindex(const SupportSet& x, const Hypothesis& target, const Background& b);

/// Element of the weighted total poset: (H, X, W).
struct SearchTriple {
    Hypothesis hypothesis;
    SupportSet support;
    double weight = 0.0;
};

/// Componentwise order on (hypothesis, support) pairs; weights decorate and
/// are ignored.
Ordering compare_triples(const SearchTriple& a, const SearchTriple& b,
                         const std::vector<Instance>& carrier, const Background& bg);

}  // namespace sng
