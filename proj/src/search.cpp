#include "sng/search.hpp"

#include <cmath>
#include <limits>

namespace sng {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::RootRejected: return "root_rejected";
        case StopReason::BelowThreshold: return "below_threshold";
        case StopReason::NoImprovement: return "no_improvement";
        case StopReason::StepLimit: return "step_limit";
        case StopReason::Exhausted: return "exhausted";
    }
    return "unknown";
}

namespace {

struct Incumbent {
    Experiment experiment;
    Hypothesis hypothesis;
    SupportSet accepted;
    double score = 0.0;  // W_i
};

CandidateRecord evaluate_candidate(GeneratorBackend& backend, const LabelledExamples& examples,
                                   const Background& b, const Experiment& e,
                                   const SearchConfig& cfg, const QConfig& qcfg,
                                   std::uint64_t gen_seed,
                                   std::optional<GenOutcome>* outcome_out) {
    CandidateRecord rec(e);
    const Hypothesis h = Hypothesis::interval(e);
    rec.theta_hat = estimate_extension_fraction(h, qcfg, b);
    const std::optional<double> q = q_score(h, examples, qcfg, b);

    std::optional<GenOutcome> gen;
    try {
        gen = run_gen(backend, std::vector<Instance>(examples.positives().begin(),
                                                     examples.positives().end()),
                      b, h, cfg.l, cfg.m, gen_seed);
    } catch (const GenAborted& err) {
        rec.error = err.what();
        return rec;  // unscored: ranks below everything
    }
    rec.gen_weight = gen->weight;
    rec.support_size = gen->accepted.members.size();
    if (outcome_out) *outcome_out = std::move(gen);

    if (!q) return rec;  // negatively infinite Q
    rec.q = *q;
    rec.score = cfg.use_qw_score ? *q * rec.gen_weight : *q * (rec.gen_weight > 0.0 ? 1.0 : 0.0);
    rec.scored = true;
    return rec;
}

}  // namespace

SearchResult run_genmol(GeneratorBackend& backend, const LabelledExamples& examples,
                        const Background& b, const FactorSpecification& spec,
                        const SearchConfig& cfg, const QConfig& qcfg) {
    if (cfg.s_search < 1 || cfg.k < 1 || cfg.l < 1 || cfg.m < 1)
        throw std::invalid_argument("run_genmol: s, k, l, m must all be >= 1");

    SearchTrace trace;
    std::mt19937_64 rng(mix_seed(cfg.seed, 0xe5u));

    // Root: the experiment is the full bounds. A backend failure here is a
    // run failure, not a prunable candidate.
    Experiment root_exp(spec, spec.bounds());
    std::optional<GenOutcome> root_gen;
    CandidateRecord root = evaluate_candidate(backend, examples, b, root_exp, cfg, qcfg,
                                              mix_seed(cfg.seed, 0, 0), &root_gen);
    if (!root.error.empty() || !root_gen)
        throw BackendError("root generation failed: " + root.error);

    StepRecord root_step;
    root_step.step = 0;
    root_step.candidates.push_back(root);
    root_step.chosen_index = 0;
    root_step.chosen_score = root.scored ? root.score : -std::numeric_limits<double>::infinity();
    root_step.improved = true;
    trace.steps.push_back(root_step);

    Incumbent inc{root_exp, Hypothesis::interval(root_exp), root_gen->accepted,
                  root_step.chosen_score};

    const auto finish = [&](StopReason reason) {
        trace.stop_reason = reason;
        SupportSet support = inc.accepted;
        if (reason != StopReason::RootRejected && cfg.final_samples > 0) {
            // A failure here must not lose a finished search; keep what we have.
            try {
                GenOutcome last = run_gen(backend,
                                          std::vector<Instance>(examples.positives().begin(),
                                                                examples.positives().end()),
                                          b, inc.hypothesis, 1, cfg.final_samples,
                                          mix_seed(cfg.seed, 0xf17a1u));
                trace.final_generation_accepted = last.accepted.members.size();
                support.members.insert(last.accepted.members.begin(),
                                       last.accepted.members.end());
            } catch (const GenAborted& aborted) {
                trace.final_generation_accepted = aborted.partial.accepted.members.size();
                support.members.insert(aborted.partial.accepted.members.begin(),
                                       aborted.partial.accepted.members.end());
            }
        }
        return SearchResult{SearchTriple{inc.hypothesis, std::move(support), inc.score},
                            std::move(trace)};
    };

    if (!root.scored || root.gen_weight == 0.0 || root.score < cfg.theta)
        return finish(StopReason::RootRejected);

    for (std::size_t i = 1; i <= cfg.k; ++i) {
        std::vector<Experiment> candidates;
        try {
            candidates = sample_sub_experiments(inc.experiment, cfg.s_search, cfg.strategy, rng);
        } catch (const ExhaustedError&) {
            return finish(StopReason::Exhausted);
        }

        StepRecord step;
        step.step = i;
        std::vector<std::optional<GenOutcome>> outcomes(candidates.size());
        for (std::size_t c = 0; c < candidates.size(); ++c)
            step.candidates.push_back(evaluate_candidate(backend, examples, b, candidates[c], cfg,
                                                         qcfg, mix_seed(cfg.seed, i, c + 1),
                                                         &outcomes[c]));

        // argmax by score; ties break to the lowest candidate index
        std::size_t best = 0;
        bool any_scored = false;
        for (std::size_t c = 0; c < step.candidates.size(); ++c) {
            const auto& rec = step.candidates[c];
            if (!rec.scored) continue;
            if (!any_scored || rec.score > step.candidates[best].score) {
                best = c;
                any_scored = true;
            }
        }
        step.chosen_index = best;
        step.chosen_score =
            any_scored ? step.candidates[best].score : -std::numeric_limits<double>::infinity();

        if (!any_scored || step.chosen_score < cfg.theta) {
            step.improved = false;
            trace.steps.push_back(std::move(step));
            return finish(StopReason::BelowThreshold);
        }
        if (step.chosen_score < inc.score) {
            step.improved = false;
            trace.steps.push_back(std::move(step));
            return finish(StopReason::NoImprovement);
        }

        step.improved = true;
        inc = Incumbent{candidates[best], Hypothesis::interval(candidates[best]),
                        outcomes[best]->accepted, step.chosen_score};
        trace.steps.push_back(std::move(step));
    }
    return finish(StopReason::StepLimit);
}

}  // namespace sng
