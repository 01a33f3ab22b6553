#include "sng/gen.hpp"

#include <sstream>

namespace sng {

PromptSpec build_prompt(const GeneratorContext& context, std::size_t s) {
    PromptSpec p;
    p.hypothesis_description = context.hypothesis_description;
    p.seed_examples = context.seed_examples;
    p.sample_budget = s;
    for (const auto& [label, x] : context.labelled_history)
        (label ? p.feasible : p.infeasible).push_back(x);

    std::ostringstream text;
    text << context.hypothesis_description;
    for (const auto& x : context.seed_examples) text << "\nexample: " << x;
    for (const auto& [label, x] : context.labelled_history)
        text << (label ? "\ntrue: " : "\nfalse: ") << x;
    p.text = text.str();
    return p;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

GenOutcome run_gen(GeneratorBackend& backend, const std::vector<Instance>& examples,
                   const Background& b, const Hypothesis& h, std::size_t n, std::size_t s,
                   std::uint64_t seed) {
    if (n < 1 || s < 1) throw std::invalid_argument("run_gen: n and s must be >= 1");

    GeneratorContext context{h.description(), examples, {}};
    GenOutcome out{0.0, SupportSet{{}, h}, {}, n, s};

    const double denom = static_cast<double>(s) * static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Instance> drawn;
        try {
            drawn = backend.sample(context, s, mix_seed(seed, i));
        } catch (const BackendError& e) {
            out.weight = static_cast<double>(out.accepted.members.size()) / denom;
            throw GenAborted(std::string("generator backend failed: ") + e.what(), out);
        }
        if (drawn.size() > s) drawn.resize(s);  // backends must not exceed the budget

        IterationRecord rec;
        rec.iteration = i;
        rec.drawn = drawn.size();
        for (const auto& x : drawn) {
            const bool label = satisfies(h, x, b);
            context.labelled_history.emplace_back(label, x);
            if (label) {
                if (out.accepted.members.insert(x).second) {
                    rec.accepted_new += 1;
                    rec.new_members.push_back(x);
                }
            } else {
                rec.rejected += 1;
            }
        }
        rec.accepted_total = out.accepted.members.size();
        rec.weight_running = static_cast<double>(rec.accepted_total) /
                             (static_cast<double>(s) * static_cast<double>(i));
        out.trace.push_back(std::move(rec));
    }

    out.weight = static_cast<double>(out.accepted.members.size()) / denom;
    return out;
}

}  // namespace sng
