#include "sng/krk.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace sng::krk {
namespace {

struct Square {
    int f = 0, r = 0;
    friend bool operator==(const Square&, const Square&) = default;
};

bool on_board(Square s) { return 1 <= s.f && s.f <= 8 && 1 <= s.r && s.r <= 8; }

bool adjacent(Square a, Square b) {
    return std::max(std::abs(a.f - b.f), std::abs(a.r - b.r)) == 1;
}

Square wk(const KrkPosition& p) { return {p.wkf, p.wkr}; }
Square wr(const KrkPosition& p) { return {p.wrf, p.wrr}; }
Square bk(const KrkPosition& p) { return {p.bkf, p.bkr}; }

// Rook attack along file or rank; the white king is the only possible blocker
// (the black king is either the target or has vacated its square).
bool rook_attacks(Square rook, Square target, Square blocker) {
    if (rook == target) return false;
    if (rook.f == target.f) {
        const int lo = std::min(rook.r, target.r), hi = std::max(rook.r, target.r);
        if (blocker.f == rook.f && lo < blocker.r && blocker.r < hi) return false;
        return true;
    }
    if (rook.r == target.r) {
        const int lo = std::min(rook.f, target.f), hi = std::max(rook.f, target.f);
        if (blocker.r == rook.r && lo < blocker.f && blocker.f < hi) return false;
        return true;
    }
    return false;
}

}  // namespace

std::optional<KrkPosition> parse_position(const std::string& text) {
    // "(c,1,a,5,a,1)" with optional spaces after commas
    std::size_t i = 0;
    const auto skip_spaces = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_spaces();
    if (i >= text.size() || text[i] != '(') return std::nullopt;
    ++i;
    std::array<int, 6> vals{};
    for (int field = 0; field < 6; ++field) {
        skip_spaces();
        if (i >= text.size()) return std::nullopt;
        const char c = text[i];
        if (field % 2 == 0) {  // file letter a..h
            if (c < 'a' || c > 'h') return std::nullopt;
            vals[field] = c - 'a' + 1;
        } else {  // rank digit 1..8
            if (c < '1' || c > '8') return std::nullopt;
            vals[field] = c - '0';
        }
        ++i;
        skip_spaces();
        const char expect = field == 5 ? ')' : ',';
        if (i >= text.size() || text[i] != expect) return std::nullopt;
        ++i;
    }
    skip_spaces();
    if (i != text.size()) return std::nullopt;
    return KrkPosition{vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]};
}

std::string format_position(const KrkPosition& p) {
    std::string out = "(";
    const auto put = [&](int file, int rank) {
        out += static_cast<char>('a' + file - 1);
        out += ',';
        out += static_cast<char>('0' + rank);
    };
    put(p.wkf, p.wkr);
    out += ',';
    put(p.wrf, p.wrr);
    out += ',';
    put(p.bkf, p.bkr);
    out += ')';
    return out;
}

bool is_legal_btm(const KrkPosition& p) {
    const Square k = wk(p), r = wr(p), b = bk(p);
    if (k == r || k == b || r == b) return false;
    return !adjacent(k, b);
}

bool is_checkmate(const KrkPosition& p) {
    if (!is_legal_btm(p)) throw std::invalid_argument("is_checkmate: illegal position");
    const Square k = wk(p), r = wr(p), b = bk(p);
    if (!rook_attacks(r, b, k)) return false;
    for (int df = -1; df <= 1; ++df) {
        for (int dr = -1; dr <= 1; ++dr) {
            if (df == 0 && dr == 0) continue;
            const Square x{b.f + df, b.r + dr};
            if (!on_board(x)) continue;
            if (x == k || adjacent(x, k)) continue;
            if (x == r) return false;  // rook capture; non-adjacency above means undefended
            if (!rook_attacks(r, x, k)) return false;
        }
    }
    return true;
}

bool eval_theory(const KrkPosition& p) {
    const auto d1 = [](int x, int y) { return std::abs(x - y) == 1; };
    // depth_of_win(0, c,2, a,A, a,2) :- not(ab3), ab3 :- diff(2,A,d1)
    if (p.wkf == 3 && p.wkr == 2 && p.wrf == 1 && p.bkf == 1 && p.bkr == 2 && !d1(2, p.wrr))
        return true;
    // depth_of_win(0, c,A, a,B, a,1) :- not(ab2), ab2 has B = 2
    if (p.wkf == 3 && p.wrf == 1 && p.bkf == 1 && p.bkr == 1 && p.wrr != 2)
        return true;
    // depth_of_win(0, A,3, B,1, A,1) :- not(ab1), ab1 :- diff(A,B,d1)
    if (p.wkr == 3 && p.wrr == 1 && p.bkr == 1 && p.wkf == p.bkf && !d1(p.wkf, p.wrf))
        return true;
    return false;
}

namespace {

using Transform = Square (*)(Square);

constexpr std::array<Transform, 8> kTransforms = {
    [](Square s) { return Square{s.f, s.r}; },
    [](Square s) { return Square{9 - s.f, s.r}; },
    [](Square s) { return Square{s.f, 9 - s.r}; },
    [](Square s) { return Square{9 - s.f, 9 - s.r}; },
    [](Square s) { return Square{s.r, s.f}; },
    [](Square s) { return Square{s.r, 9 - s.f}; },
    [](Square s) { return Square{9 - s.r, s.f}; },
    [](Square s) { return Square{9 - s.r, 9 - s.f}; },
};

bool in_triangle(Square s) { return s.f <= 4 && s.r <= s.f; }

auto tie_break_key(const KrkPosition& p) {
    return std::make_tuple(p.wrf, p.wrr, p.bkf, p.bkr);
}

}  // namespace

KrkPosition canonicalize(const KrkPosition& p) {
    bool have = false;
    KrkPosition best{};
    for (const auto& t : kTransforms) {
        const Square k = t(wk(p)), r = t(wr(p)), b = t(bk(p));
        if (!in_triangle(k)) continue;
        const KrkPosition cand{k.f, k.r, r.f, r.r, b.f, b.r};
        if (!have || tie_break_key(cand) > tie_break_key(best)) {
            best = cand;
            have = true;
        }
    }
    return best;  // every position has at least one triangle image
}

const std::vector<KrkPosition>& enumerate_canonical() {
    static const std::vector<KrkPosition> all = [] {
        std::vector<KrkPosition> out;
        for (int kf = 1; kf <= 4; ++kf)
            for (int kr = 1; kr <= kf; ++kr)
                for (int rf = 1; rf <= 8; ++rf)
                    for (int rr = 1; rr <= 8; ++rr)
                        for (int bf = 1; bf <= 8; ++bf)
                            for (int br = 1; br <= 8; ++br) {
                                const KrkPosition p{kf, kr, rf, rr, bf, br};
                                if (!is_legal_btm(p)) continue;
                                if (canonicalize(p) == p) out.push_back(p);
                            }
        return out;
    }();
    return all;
}

TheoryReport theory_extension_report() {
    TheoryReport rep;
    const auto& canon = enumerate_canonical();
    rep.canonical_total = canon.size();
    for (const auto& p : canon) {
        if (is_checkmate(p)) ++rep.checkmates;
        if (eval_theory(p)) rep.legal_satisfiers.push_back(p);
    }
    // Illegal satisfiers live in the same coordinate box as the canonical
    // enumeration but fail the legality test.
    for (int kf = 1; kf <= 4; ++kf)
        for (int kr = 1; kr <= kf; ++kr)
            for (int rf = 1; rf <= 8; ++rf)
                for (int rr = 1; rr <= 8; ++rr)
                    for (int bf = 1; bf <= 8; ++bf)
                        for (int br = 1; br <= 8; ++br) {
                            const KrkPosition p{kf, kr, rf, rr, bf, br};
                            if (eval_theory(p) && !is_legal_btm(p))
                                rep.illegal_satisfiers.push_back(p);
                        }
    for (int kf = 1; kf <= 8; ++kf)
        for (int kr = 1; kr <= 8; ++kr)
            for (int rf = 1; rf <= 8; ++rf)
                for (int rr = 1; rr <= 8; ++rr)
                    for (int bf = 1; bf <= 8; ++bf)
                        for (int br = 1; br <= 8; ++br) {
                            const KrkPosition p{kf, kr, rf, rr, bf, br};
                            if (!eval_theory(p)) continue;
                            if (is_legal_btm(p))
                                ++rep.full_board_legal_satisfiers;
                            else
                                ++rep.full_board_illegal_satisfiers;
                        }
    return rep;
}

void export_csv(std::ostream& out) {
    out << "wkf,wkr,wrf,wrr,bkf,bkr,legal,wfw,theory\n";
    for (const auto& p : enumerate_canonical()) {
        out << static_cast<char>('a' + p.wkf - 1) << ',' << p.wkr << ','
            << static_cast<char>('a' + p.wrf - 1) << ',' << p.wrr << ','
            << static_cast<char>('a' + p.bkf - 1) << ',' << p.bkr << ",1,"
            << (is_checkmate(p) ? 1 : 0) << ',' << (eval_theory(p) ? 1 : 0) << '\n';
    }
}

namespace {

const char* kTheoryText =
    "wfw((WKF,WKR,WRF,WRR,BKF,BKR)) :- depth_of_win(0,WKF,WKR,WRF,WRR,BKF,BKR).\n"
    "depth_of_win(0, c, 2, a, A, a, 2) :- not(ab3(0, c, 2, a, A, a, 2)).\n"
    "depth_of_win(0, c, A, a, B, a, 1) :- not(ab2(0, c, A, a, B, a, 1)).\n"
    "depth_of_win(0, A, 3, B, 1, A, 1) :- not(ab1(0, A, 3, B, 1, A, 1)).\n"
    "ab1(0, A, 3, B, 1, A, 1) :- diff(A, B, d1).\n"
    "ab2(0, c, A, a, 2, a, 1).\n"
    "ab3(0, c, 2, a, A, a, 2) :- diff(2, A, d1).";

}  // namespace

Hypothesis wfw_theory_hypothesis() {
    return Hypothesis::external(
        "krk-wfw",
        [](const Instance& x) {
            const auto p = parse_position(x);
            return p && eval_theory(*p);
        },
        kTheoryText);
}

Hypothesis always_false_hypothesis() {
    return Hypothesis::external("always-false", [](const Instance&) { return false; },
                                "no position is feasible");
}

Background background() {
    std::vector<Instance> encodings;
    encodings.reserve(enumerate_canonical().size());
    for (const auto& p : enumerate_canonical()) encodings.push_back(format_position(p));
    return Background{{}, Universe::enumerated(std::move(encodings))};
}

}  // namespace sng::krk
