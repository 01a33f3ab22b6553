#include "sng/scoring.hpp"

#include <cmath>

namespace sng {

double estimate_extension_fraction(const Hypothesis& h, const QConfig& cfg, const Background& b) {
    if (cfg.unlabelled.empty())
        throw std::invalid_argument("extension-fraction estimation needs a nonempty unlabelled sample");
    std::size_t hits = 0;
    for (const auto& x : cfg.unlabelled)
        if (satisfies(h, x, b)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(cfg.unlabelled.size());
}

Partition partition_examples(const Hypothesis& h, const LabelledExamples& ex, const Background& b) {
    Partition p;
    for (const auto& e : ex.positives()) {
        if (satisfies(h, e, b))
            p.tp.insert(e);
        else
            p.fpn.insert(e);
    }
    for (const auto& e : ex.negatives()) {
        if (satisfies(h, e, b))
            p.fpn.insert(e);
        else
            p.tn.insert(e);
    }
    return p;
}

std::optional<double> q_score(const Hypothesis& h, const LabelledExamples& ex, const QConfig& cfg,
                              const Background& b) {
    const double theta = estimate_extension_fraction(h, cfg, b);
    const Partition p = partition_examples(h, ex, b);
    const double eps = cfg.epsilon;

    // Degenerate estimates are signalled, not clamped: clamping would corrupt
    // the specificity ordering the search relies on.
    if (!p.tp.empty() && theta == 0.0) return std::nullopt;
    if (!p.tn.empty() && theta == 1.0) return std::nullopt;
    if (!p.fpn.empty() && eps == 0.0) return std::nullopt;

    double score = cfg.log_prior ? cfg.log_prior(h) : 0.0;
    if (!p.tp.empty())
        score += static_cast<double>(p.tp.size()) * std::log((1.0 - eps) / theta + eps);
    if (!p.tn.empty())
        score += static_cast<double>(p.tn.size()) * std::log((1.0 - eps) / (1.0 - theta) + eps);
    if (!p.fpn.empty())
        score += static_cast<double>(p.fpn.size()) * std::log(eps);
    return score;
}

}  // namespace sng
