#include "sng/hypothesis.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sng {

std::vector<Instance> Universe::sample(std::size_t count, std::uint64_t seed) const {
    if (empty()) throw std::invalid_argument("universe is empty");
    if (!enumerable()) return sampler_(count, seed);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(items_[pick(rng)]);
    return out;
}

std::string Hypothesis::description() const {
    if (is_external()) {
        const auto& t = as_external();
        return t.description.empty() ? t.id : t.description;
    }
    const auto& ih = as_interval();
    const auto& spec = ih.spec();
    const auto& vec = ih.experiment.vector();
    std::ostringstream out;
    for (std::size_t i = 0; i < spec.arity(); ++i) {
        if (i > 0) out << " and ";
        out << spec.factors()[i] << " in [" << vec[i].lo << ", " << vec[i].hi << "]";
    }
    return out.str();
}

Hypothesis make_interval_hypothesis(const FactorSpecification& spec, const IntervalVector& vector) {
    return Hypothesis::interval(Experiment(spec, vector));
}

bool satisfies(const Hypothesis& h, const Instance& x, const Background& b) {
    if (h.is_external()) return h.as_external().membership(x);
    const auto& ih = h.as_interval();
    const auto& spec = ih.spec();
    const auto& vec = ih.experiment.vector();
    for (std::size_t i = 0; i < spec.arity(); ++i) {
        auto v = b.factor_value(spec.factors()[i], x);
        if (!v || !vec[i].contains(*v)) return false;
    }
    return true;
}

std::vector<Instance> extension_on(const Hypothesis& h, const std::vector<Instance>& sample,
                                   const Background& b) {
    std::vector<Instance> out;
    for (const auto& x : sample)
        if (satisfies(h, x, b)) out.push_back(x);
    return out;
}

Ordering compare_hypotheses(const Hypothesis& h1, const Hypothesis& h2,
                            const std::vector<Instance>& carrier, const Background& b) {
    bool h1_covers_h2 = true;  // ext(h2) subseteq ext(h1)
    bool h2_covers_h1 = true;
    for (const auto& x : carrier) {
        const bool s1 = satisfies(h1, x, b);
        const bool s2 = satisfies(h2, x, b);
        if (s2 && !s1) h1_covers_h2 = false;
        if (s1 && !s2) h2_covers_h1 = false;
        if (!h1_covers_h2 && !h2_covers_h1) return Ordering::Incomparable;
    }
    if (h1_covers_h2 && h2_covers_h1) return Ordering::Equal;
    return h1_covers_h2 ? Ordering::GreaterEq : Ordering::LessEq;
}

SupportSet reindex(const SupportSet& x, const Hypothesis& target, const Background& b) {
    SupportSet out{{}, target};
    for (const auto& m : x.members)
        if (satisfies(target, m, b)) out.members.insert(m);
    return out;
}

Ordering compare_triples(const SearchTriple& a, const SearchTriple& b,
                         const std::vector<Instance>& carrier, const Background& bg) {
    const Ordering hyp = compare_hypotheses(a.hypothesis, b.hypothesis, carrier, bg);
    const bool h_geq = hyp == Ordering::GreaterEq || hyp == Ordering::Equal;
    const bool h_leq = hyp == Ordering::LessEq || hyp == Ordering::Equal;
    const bool s_geq = std::includes(a.support.members.begin(), a.support.members.end(),
                                     b.support.members.begin(), b.support.members.end());
    const bool s_leq = std::includes(b.support.members.begin(), b.support.members.end(),
                                     a.support.members.begin(), a.support.members.end());
    const bool geq = h_geq && s_geq;
    const bool leq = h_leq && s_leq;
    if (geq && leq) return Ordering::Equal;
    if (geq) return Ordering::GreaterEq;
    if (leq) return Ordering::LessEq;
    return Ordering::Incomparable;
}

}  // namespace sng
