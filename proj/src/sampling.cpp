#include "sng/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sng {
namespace {

// Strictly inside when the interval has an interior; falls back to the
// nearest representable point above lo for vanishingly narrow intervals.
double draw_inside(const Interval& iv, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(iv.lo, iv.hi);
    for (int k = 0; k < 64; ++k) {
        const double v = u(rng);
        if (iv.lo < v && v < iv.hi) return v;
    }
    const double mid = iv.lo + iv.width() / 2.0;
    if (iv.lo < mid && mid < iv.hi) return mid;
    return std::nextafter(iv.lo, iv.hi);
}

// lo < a <= b < hi (a == b only when the interval has almost no interior)
Interval draw_sub_interval(const Interval& iv, std::mt19937_64& rng) {
    double a = draw_inside(iv, rng);
    double b = draw_inside(iv, rng);
    for (int k = 0; k < 64 && a == b; ++k) b = draw_inside(iv, rng);
    if (a > b) std::swap(a, b);
    return {a, b};
}

Interval stratum_of(const Interval& iv, std::size_t index, std::size_t count) {
    const double w = iv.width() / static_cast<double>(count);
    const double lo = std::max(iv.lo, iv.lo + w * static_cast<double>(index));
    const double hi = (index + 1 == count)
                          ? iv.hi
                          : std::min(iv.hi, iv.lo + w * static_cast<double>(index + 1));
    return {lo, std::max(lo, hi)};
}

std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

std::vector<Experiment> sample_sub_experiments(const Experiment& current, std::size_t count,
                                               SamplingStrategy strategy, std::mt19937_64& rng) {
    if (count < 1) throw std::invalid_argument("sample_sub_experiments: count must be >= 1");
    const IntervalVector& cur = current.vector();
    if (cur.degenerate())
        throw ExhaustedError("current experiment is a point; no proper sub-experiment exists");

    const auto& directions = current.spec().directions();
    const std::size_t dims = cur.size();

    std::vector<std::vector<Interval>> drawn(count, std::vector<Interval>(dims));

    if (strategy == SamplingStrategy::LatinHyperRectangle) {
        // Stratify per dimension: one permutation assigns each candidate its
        // stratum; the un-drawn endpoint of a hinted dimension stays fixed.
        for (std::size_t d = 0; d < dims; ++d) {
            if (cur[d].degenerate()) {
                for (std::size_t j = 0; j < count; ++j) drawn[j][d] = cur[d];
                continue;
            }
            const auto perm = random_permutation(count, rng);
            const Direction dir = directions[d];
            for (std::size_t j = 0; j < count; ++j) {
                const Interval stratum = stratum_of(cur[d], perm[j], count);
                switch (dir) {
                    case Direction::Maximize:
                        drawn[j][d] = {draw_inside(stratum, rng), cur[d].hi};
                        break;
                    case Direction::Minimize:
                        drawn[j][d] = {cur[d].lo, draw_inside(stratum, rng)};
                        break;
                    case Direction::Free:
                        drawn[j][d] = draw_sub_interval(stratum, rng);
                        break;
                }
            }
        }
    } else {
        for (std::size_t j = 0; j < count; ++j) {
            for (std::size_t d = 0; d < dims; ++d) {
                if (cur[d].degenerate()) {
                    drawn[j][d] = cur[d];
                    continue;
                }
                const bool fixed_bound = strategy == SamplingStrategy::FixedBound;
                const Direction dir = fixed_bound ? directions[d] : Direction::Free;
                switch (dir) {
                    case Direction::Maximize:
                        drawn[j][d] = {draw_inside(cur[d], rng), cur[d].hi};
                        break;
                    case Direction::Minimize:
                        drawn[j][d] = {cur[d].lo, draw_inside(cur[d], rng)};
                        break;
                    case Direction::Free:
                        drawn[j][d] = draw_sub_interval(cur[d], rng);
                        break;
                }
            }
        }
    }

    std::vector<Experiment> out;
    out.reserve(count);
    for (auto& intervals : drawn)
        out.emplace_back(current.spec(), IntervalVector(std::move(intervals)));
    return out;
}

}  // namespace sng
