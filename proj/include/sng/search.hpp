#pragma once

#include <optional>

#include "sng/gen.hpp"
#include "sng/sampling.hpp"
#include "sng/scoring.hpp"

namespace sng {

struct SearchConfig {
    std::size_t s_search = 10;  // candidate experiments per step
    std::size_t k = 10;         // max search steps
    std::size_t l = 10;         // Gen iterations per run
    std::size_t m = 10;         // Gen sample budget per iteration
    double theta = 0.0;         // acceptance threshold on the combined score
    SamplingStrategy strategy = SamplingStrategy::LatinHyperRectangle;
    std::uint64_t seed = 0;
    std::size_t final_samples = 100;  // final-answer generation budget
    bool use_qw_score = false;        // score q*w instead of q*1(w>0)
};

enum class StopReason { RootRejected, BelowThreshold, NoImprovement, StepLimit, Exhausted };

const char* to_string(StopReason r);

/// One evaluated candidate experiment. `scored` is false when the Q-score was
/// negatively infinite or the backend failed; such candidates rank below
/// every finite score.
struct CandidateRecord {
    explicit CandidateRecord(Experiment e) : experiment(std::move(e)) {}

    Experiment experiment;
    bool scored = false;
    double score = 0.0;       // w' = q * 1(w > 0)  (or q*w)
    double q = 0.0;           // Q-heuristic value when finite
    double gen_weight = 0.0;  // Gen's w
    double theta_hat = 0.0;   // extension fraction on the unlabelled sample
    std::size_t support_size = 0;
    std::string error;
};

/// One search step: the candidates considered and the one chosen. Step 0 is
/// the root evaluation with a single candidate.
struct StepRecord {
    std::size_t step = 0;
    std::vector<CandidateRecord> candidates;
    std::size_t chosen_index = 0;
    double chosen_score = 0.0;  // W_i
    bool improved = false;      // whether this step replaced the incumbent
};

struct SearchTrace {
    std::vector<StepRecord> steps;
    StopReason stop_reason = StopReason::StepLimit;
    std::size_t final_generation_accepted = 0;
};

struct SearchResult {
    SearchTriple triple;
    SearchTrace trace;
};

/// Greedy search over nested experiments (general-to-specific). The root is
/// the full bounds; each step samples properly contained candidates, scores
/// them with Q gated by generation feasibility, and keeps the argmax. Stops
/// when the best candidate drops below theta, fails to improve on the
/// incumbent, or the step limit is hit; the incumbent from the last improving
/// step is returned. When the search accepts a hypothesis, one further Gen
/// run with `final_samples` budget tops up the reported support set.
SearchResult run_genmol(GeneratorBackend& backend, const LabelledExamples& examples,
                        const Background& b, const FactorSpecification& spec,
                        const SearchConfig& cfg, const QConfig& qcfg);

}  // namespace sng
