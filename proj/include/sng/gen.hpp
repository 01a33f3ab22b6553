#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>

#include "sng/hypothesis.hpp"

namespace sng {

/// Conditioning state threaded through a Gen run: the hypothesis text, the
/// seed examples, and the append-only labelled history.
struct GeneratorContext {
    std::string hypothesis_description;
    std::vector<Instance> seed_examples;
    std::vector<std::pair<bool, Instance>> labelled_history;  // (label, instance), draw order
};

/// Deterministic, backend-neutral rendering of a context. Backends turn this
/// into their own wire prompt (see the chat builders).
struct PromptSpec {
    std::string hypothesis_description;
    std::vector<Instance> seed_examples;
    std::vector<Instance> feasible;    // true-labelled history, in order
    std::vector<Instance> infeasible;  // false-labelled history, in order
    std::size_t sample_budget = 0;
    std::string text;  // canonical "true: x" / "false: x" rendering
};

PromptSpec build_prompt(const GeneratorContext& context, std::size_t s);

/// Transport or decoding failure inside a backend, after its own retries.
struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pluggable stochastic generator. Returns at most `count` candidate
/// encodings; duplicates and malformed encodings are allowed (the caller
/// verifies). Must be deterministic for a fixed (context, count, seed).
class GeneratorBackend {
public:
    virtual ~GeneratorBackend() = default;
    virtual std::vector<Instance> sample(const GeneratorContext& context, std::size_t count,
                                         std::uint64_t seed) = 0;
};

struct IterationRecord {
    std::size_t iteration = 0;       // 1-based
    std::size_t drawn = 0;           // candidates the backend returned
    std::size_t accepted_new = 0;    // new unique verified-true instances
    std::size_t accepted_total = 0;  // |M_i|
    std::size_t rejected = 0;        // verified-false candidates this iteration
    double weight_running = 0.0;     // |M_i| / (s * i)
    std::vector<Instance> new_members;
};

/// Result of a Gen run: weight = |accepted| / (s * n) over the full draw
/// budget, the verified support set, and the per-iteration trace.
struct GenOutcome {
    double weight = 0.0;
    SupportSet accepted;
    std::vector<IterationRecord> trace;
    std::size_t iterations = 0;     // n
    std::size_t sample_budget = 0;  // s
};

/// A run aborted by a backend failure; the partial trace is preserved.
struct GenAborted : std::runtime_error {
    GenAborted(const std::string& what, GenOutcome partial_outcome)
        : std::runtime_error(what), partial(std::move(partial_outcome)) {}
    GenOutcome partial;
};

/// Rejection sampling with contextual feedback: n iterations of at most s
/// draws each; every candidate is labelled by `satisfies` and appended to the
/// context; verified-true candidates accumulate with set semantics. The
/// weight denominator is the full s*n budget even when the backend under-
/// delivers.
GenOutcome run_gen(GeneratorBackend& backend, const std::vector<Instance>& examples,
                   const Background& b, const Hypothesis& h, std::size_t n, std::size_t s,
                   std::uint64_t seed);

/// Stable seed derivation so that nested runs draw independent, reproducible
/// streams from one root seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace sng
