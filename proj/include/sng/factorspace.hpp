#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sng/hypothesis.hpp"

namespace sng::factorspace {

/// Token analysis of a synthetic instance. Instances are strings over the
/// letters B C N O F P S I (each with a fixed mass) plus balanced
/// parentheses marking branches. Tokenization is total: a string either
/// parses or is invalid, and invalid strings have no factor values.
struct Tokens {
    std::string letters;   // in order, parentheses stripped
    std::size_t branches = 0;  // number of '('
    std::size_t depth = 0;     // maximum nesting depth
};

std::optional<Tokens> tokenize(const Instance& x);

/// Sum of per-letter masses. Empty optional on invalid input.
std::optional<double> weight_like(const Instance& x);

/// Bounded nonlinear function of token composition, in [3, 10].
std::optional<double> affinity_like(const Instance& x);

/// Length/branching penalty, in [0, 7].
std::optional<double> sas_like(const Instance& x);

/// Mean Jaccard coefficient between x's letter set and each known instance's.
/// 1 means identical token sets everywhere, 0 means fully novel.
double jaccard_novelty(const Instance& x, const std::set<Instance>& known);

/// Deterministic corpus of valid instances for fixtures and tests.
std::vector<Instance> random_instances(std::size_t count, std::uint64_t seed);

/// Factors "affinity", "molwt" and "sas" backed by the built-in functions.
/// The universe is left empty; callers attach one (typically the unlabelled
/// sample or a synthetic corpus).
Background background();

/// The paper-default search box: affinity [3,10] maximized, molwt [200,700]
/// free, sas [0,7] minimized.
FactorSpecification default_spec();

/// Seam for real scoring tools. One subprocess per batch: the instance
/// encodings go to stdin newline-delimited; stdout must answer
/// "encoding<TAB>value" or "encoding<TAB>ERR" per line; a nonzero exit fails
/// the whole batch. Results are cached, so repeated queries are idempotent.
class SubprocessAdapter {
public:
    /// `command` is run as `command <factor-name>` with the batch on stdin.
    explicit SubprocessAdapter(std::string command, std::size_t max_batch = 256)
        : command_(std::move(command)), max_batch_(max_batch) {}

    std::map<Instance, std::optional<double>> invoke(const std::string& factor,
                                                     const std::vector<Instance>& batch);

    /// Adapts one external factor as a FactorFn.
    FactorFn factor_fn(const std::string& factor);

private:
    std::string command_;
    std::size_t max_batch_;
    std::map<std::pair<std::string, Instance>, std::optional<double>> cache_;
};

}  // namespace sng::factorspace
