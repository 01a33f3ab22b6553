#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace sng {

/// A closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool degenerate() const { return lo == hi; }
    double width() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// An n-dimensional axis-parallel hyper-rectangle: one closed interval per
/// dimension. Arity is fixed at construction; every interval keeps lo <= hi.
class IntervalVector {
public:
    explicit IntervalVector(std::vector<Interval> intervals)
        : intervals_(std::move(intervals)) {
        if (intervals_.empty())
            throw std::invalid_argument("IntervalVector: arity must be >= 1");
        for (const auto& iv : intervals_)
            if (!(iv.lo <= iv.hi))
                throw std::invalid_argument("IntervalVector: lo > hi");
    }

    IntervalVector(std::initializer_list<Interval> intervals)
        : IntervalVector(std::vector<Interval>(intervals)) {}

    std::size_t size() const { return intervals_.size(); }
    const Interval& operator[](std::size_t i) const { return intervals_[i]; }
    auto begin() const { return intervals_.begin(); }
    auto end() const { return intervals_.end(); }

    /// True when every dimension is a single point; such a vector has no
    /// proper sub-rectangle.
    bool degenerate() const {
        for (const auto& iv : intervals_)
            if (!iv.degenerate()) return false;
        return true;
    }

    friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

private:
    std::vector<Interval> intervals_;
};

namespace detail {
inline void check_same_arity(const IntervalVector& a, const IntervalVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("interval-vector arity mismatch");
}
}  // namespace detail

/// Per-dimension interval inclusion: inner_i subseteq outer_i for all i.
inline bool contains(const IntervalVector& outer, const IntervalVector& inner) {
    detail::check_same_arity(outer, inner);
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (inner[i].lo < outer[i].lo || inner[i].hi > outer[i].hi) return false;
    return true;
}

/// Containment with at least one strictly smaller dimension.
inline bool properly_contains(const IntervalVector& outer, const IntervalVector& inner) {
    if (!contains(outer, inner)) return false;
    for (std::size_t i = 0; i < outer.size(); ++i)
        if (inner[i].lo > outer[i].lo || inner[i].hi < outer[i].hi) return true;
    return false;
}

}  // namespace sng
