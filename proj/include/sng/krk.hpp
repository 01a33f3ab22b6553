#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sng/hypothesis.hpp"

namespace sng::krk {

/// King-Rook-King position with Black to move. Files and ranks are 1..8
/// (file 1 = a). Wire encoding: "(c,1,a,5,a,1)" = (WKF,WKR,WRF,WRR,BKF,BKR).
struct KrkPosition {
    int wkf = 1, wkr = 1;
    int wrf = 1, wrr = 1;
    int bkf = 1, bkr = 1;

    friend auto operator<=>(const KrkPosition&, const KrkPosition&) = default;
};

std::optional<KrkPosition> parse_position(const std::string& text);
std::string format_position(const KrkPosition& p);

/// Pairwise-distinct squares and non-adjacent kings. With K+R vs K and black
/// to move, the side-not-to-move-in-check rule reduces to king non-adjacency.
bool is_legal_btm(const KrkPosition& p);

/// Black king in check from the rook with no legal reply. Throws
/// std::invalid_argument on an illegal position.
bool is_checkmate(const KrkPosition& p);

/// The learned won-for-white theory: three depth_of_win clauses guarded by
/// negation-as-failure ab clauses. Total on any 6-tuple, legal or not.
/// diff(X,Y,d1) holds iff the ordinal distance between X and Y is exactly 1.
bool eval_theory(const KrkPosition& p);

/// Maps a position to its symmetry-class representative: white king in the
/// a1-d1-d4 triangle (file <= 4, rank <= file); with the white king on the
/// a1-d4 diagonal, the representative whose (WRF,WRR,BKF,BKR) tuple is
/// lexicographically largest.
KrkPosition canonicalize(const KrkPosition& p);

/// All canonical legal black-to-move positions. Exactly 28,056 entries, of
/// which exactly 27 are checkmates.
const std::vector<KrkPosition>& enumerate_canonical();

struct TheoryReport {
    std::size_t canonical_total = 0;
    std::size_t checkmates = 0;
    /// Theory satisfiers inside the canonical enumeration.
    std::vector<KrkPosition> legal_satisfiers;
    /// Theory satisfiers in the white-king-triangle coordinate box that fail
    /// the legality test (coincident squares or adjacent kings).
    std::vector<KrkPosition> illegal_satisfiers;
    /// Informational full-board tallies (no canonicalization applied).
    std::size_t full_board_legal_satisfiers = 0;
    std::size_t full_board_illegal_satisfiers = 0;
};

/// Exhaustive cross-tabulation of the theory against the legality and
/// checkmate oracles.
TheoryReport theory_extension_report();

/// Canonical dataset as CSV: wkf,wkr,wrf,wrr,bkf,bkr,legal,wfw,theory.
void export_csv(std::ostream& out);

/// The theory as a hypothesis usable by the Gen loop ("krk-wfw"); membership
/// parses the wire encoding and evaluates the theory, so malformed strings
/// are infeasible.
Hypothesis wfw_theory_hypothesis();

/// Negative control for generation experiments: satisfied by nothing.
Hypothesis always_false_hypothesis();

/// Background with the canonical enumeration as the universe. The theory
/// carries its own evaluator, so no factor functions are registered.
Background background();

}  // namespace sng::krk
