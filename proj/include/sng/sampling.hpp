#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "sng/factor_spec.hpp"

namespace sng {

enum class SamplingStrategy { UniformOrthogonal, FixedBound, LatinHyperRectangle };

/// The current experiment is a point in every dimension; no proper
/// sub-rectangle exists.
struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Draws `count` experiments properly contained by `current`. Direction hints
/// come from the experiment's factor specification.
///
///  - UniformOrthogonal: both endpoints drawn uniformly inside each interval.
///  - FixedBound: the favourable endpoint stays put (Maximize keeps hi and
///    draws lo; Minimize keeps lo and draws hi; Free falls back to
///    orthogonal draws).
///  - LatinHyperRectangle: the drawn endpoints of each dimension are
///    stratified across the candidates — each candidate's draw lands in a
///    distinct stratum. Free dimensions draw both endpoints inside the
///    candidate's stratum and order them, which keeps both endpoint families
///    exactly stratified while preserving lo < hi.
///
/// Point dimensions are carried through unchanged; if every dimension is a
/// point, ExhaustedError is thrown.
std::vector<Experiment> sample_sub_experiments(const Experiment& current, std::size_t count,
                                               SamplingStrategy strategy, std::mt19937_64& rng);

}  // namespace sng
