#pragma once

// Shared fixtures for the test binaries. Everything here is test-only; the
// brute-force scorers double as independent oracles and must stay decoupled
// from the library's scoring path.

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sng/hypothesis.hpp"
#include "sng/scoring.hpp"

namespace testsupport {

using namespace sng;

// One factor "f" that reads the instance as a number; anything unparseable is
// undefined.
inline Background numeric_background() {
    Background b;
    b.factors["f"] = [](const Instance& x) -> std::optional<double> {
        try {
            std::size_t pos = 0;
            const double v = std::stod(x, &pos);
            if (pos != x.size()) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    };
    return b;
}

inline std::vector<Instance> numeric_universe(int lo, int hi) {
    std::vector<Instance> out;
    for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
    return out;
}

inline FactorSpecification numeric_spec(double lo, double hi,
                                        Direction dir = Direction::Free) {
    return FactorSpecification({"f"}, IntervalVector{{lo, hi}}, {dir});
}

inline Hypothesis numeric_hypothesis(const FactorSpecification& spec, double lo, double hi) {
    return make_interval_hypothesis(spec, IntervalVector{{lo, hi}});
}

// Factors defined by lookup tables; instances not listed are undefined.
inline Background table_background(
    const std::map<std::string, std::map<Instance, double>>& tables) {
    Background b;
    for (const auto& [name, table] : tables)
        b.factors[name] = [table](const Instance& x) -> std::optional<double> {
            const auto it = table.find(x);
            if (it == table.end()) return std::nullopt;
            return it->second;
        };
    return b;
}

inline Hypothesis always_true() {
    return Hypothesis::external("always-true", [](const Instance&) { return true; });
}

inline Hypothesis always_false() {
    return Hypothesis::external("always-false", [](const Instance&) { return false; });
}

// Deterministic pseudo-random membership predicate (FNV hash mod k == 0).
inline Hypothesis modhash_theory(std::uint64_t salt, unsigned k) {
    return Hypothesis::external(
        "modhash-" + std::to_string(salt) + "-" + std::to_string(k),
        [salt, k](const Instance& x) {
            std::uint64_t h = 0xcbf29ce484222325ULL ^ salt;
            for (unsigned char c : x) {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
            return h % k == 0;
        });
}

// Random closed sub-interval of [lo, hi] on integer endpoints.
inline Interval random_subinterval(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    int a = d(rng), b = d(rng);
    if (a > b) std::swap(a, b);
    return {static_cast<double>(a), static_cast<double>(b)};
}

// ---- independent scoring oracle (counts sets directly, no library calls) --

struct BruteScore {
    bool finite = false;
    double value = 0.0;
};

// eps = 0 Q-score by direct enumeration of the extension over sample and
// examples. `member` must be an independent membership test.
template <typename MemberFn>
BruteScore brute_q_eps0(MemberFn member, const std::set<Instance>& positives,
                        const std::set<Instance>& negatives,
                        const std::vector<Instance>& sample) {
    std::size_t hits = 0;
    for (const auto& x : sample)
        if (member(x)) ++hits;
    const double theta = static_cast<double>(hits) / static_cast<double>(sample.size());
    for (const auto& p : positives)
        if (!member(p)) return {};  // FPN nonempty -> -inf
    for (const auto& n : negatives)
        if (member(n)) return {};
    if (!positives.empty() && theta == 0.0) return {};
    if (!negatives.empty() && theta == 1.0) return {};
    double q = 0.0;
    if (!positives.empty()) q += static_cast<double>(positives.size()) * std::log(1.0 / theta);
    if (!negatives.empty())
        q += static_cast<double>(negatives.size()) * std::log(1.0 / (1.0 - theta));
    return {true, q};
}

}  // namespace testsupport
