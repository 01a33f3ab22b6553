#pragma once

#include <functional>
#include <optional>
#include <set>

#include "sng/hypothesis.hpp"

namespace sng {

/// Labelled data D = E+ union E-; the two sets are disjoint.
class LabelledExamples {
public:
    LabelledExamples() = default;

    LabelledExamples(std::set<Instance> positives, std::set<Instance> negatives)
        : positives_(std::move(positives)), negatives_(std::move(negatives)) {
        for (const auto& p : positives_)
            if (negatives_.count(p))
                throw std::invalid_argument("labelled examples: positives and negatives overlap");
    }

    const std::set<Instance>& positives() const { return positives_; }
    const std::set<Instance>& negatives() const { return negatives_; }

private:
    std::set<Instance> positives_;
    std::set<Instance> negatives_;
};

/// Configuration for the Q-heuristic. The unlabelled sample is drawn once per
/// search run so that sibling candidates share the estimation carrier.
struct QConfig {
    double epsilon = 0.0;                                  // label-noise probability, in [0,1)
    std::function<double(const Hypothesis&)> log_prior;    // empty = uniform prior (0)
    std::vector<Instance> unlabelled;
};

/// Partition of D by a hypothesis: covered positives, uncovered negatives,
/// and everything else.
struct Partition {
    std::set<Instance> tp;   // positives inside the extension
    std::set<Instance> tn;   // negatives outside the extension
    std::set<Instance> fpn;  // the rest of D
};

/// Maximum-likelihood estimate of the extension fraction on the unlabelled
/// sample. Throws on an empty sample.
double estimate_extension_fraction(const Hypothesis& h, const QConfig& cfg, const Background& b);

Partition partition_examples(const Hypothesis& h, const LabelledExamples& ex, const Background& b);

/// McCreath's Q-heuristic (natural log):
///   log P(H) + |TP| log((1-eps)/theta + eps)
///            + |TN| log((1-eps)/(1-theta) + eps)
///            + |FPN| log(eps)
/// An empty optional signals a negatively infinite score: eps = 0 with a
/// nonempty FPN, or a degenerate theta that a required term needs. Callers
/// rank an empty optional below every finite score.
std::optional<double> q_score(const Hypothesis& h, const LabelledExamples& ex, const QConfig& cfg,
                              const Background& b);

}  // namespace sng
