#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sng/factorspace.hpp"
#include "sng/krk.hpp"
#include "sng/serialize.hpp"

using namespace sng;
namespace fs = std::filesystem;

// ---- krk: encoding ----------------------------------------------------------

TEST_CASE("position encoding round-trip and rejection of malformed strings") {
    const auto p = krk::parse_position("(c,1,a,5,a,1)");
    REQUIRE(p.has_value());
    CHECK(p->wkf == 3);
    CHECK(p->wrr == 5);
    CHECK(krk::format_position(*p) == "(c,1,a,5,a,1)");

    CHECK(krk::parse_position("( c, 1, a, 5, a, 1 )").has_value());  // spaces tolerated
    CHECK_FALSE(krk::parse_position("c1a5a1").has_value());
    CHECK_FALSE(krk::parse_position("(c,1,a,5,a)").has_value());
    CHECK_FALSE(krk::parse_position("(c,1,a,5,a,1) extra").has_value());
    CHECK_FALSE(krk::parse_position("(i,1,a,5,a,1)").has_value());
    CHECK_FALSE(krk::parse_position("(c,9,a,5,a,1)").has_value());
    CHECK_FALSE(krk::parse_position("(C,1,a,5,a,1)").has_value());
    CHECK_FALSE(krk::parse_position("").has_value());
}

// ---- krk: rules oracles ------------------------------------------------------

TEST_CASE("legality") {
    CHECK(krk::is_legal_btm({3, 1, 1, 5, 1, 1}));        // WK c1, WR a5, BK a1
    CHECK_FALSE(krk::is_legal_btm({2, 2, 8, 8, 1, 1}));  // kings adjacent
    CHECK_FALSE(krk::is_legal_btm({1, 1, 1, 1, 3, 5}));  // coincident squares
}

TEST_CASE("checkmate oracle") {
    CHECK(krk::is_checkmate({3, 1, 1, 5, 1, 1}));        // WK c1, WR a5, BK a1
    CHECK_FALSE(krk::is_checkmate({3, 1, 1, 2, 1, 1}));  // BK captures the undefended rook
    CHECK_FALSE(krk::is_checkmate({5, 4, 8, 8, 1, 1}));  // not even in check
    CHECK_THROWS_AS(krk::is_checkmate({2, 2, 8, 8, 1, 1}), std::invalid_argument);
}

TEST_CASE("theory evaluation on the spec anchors") {
    CHECK(krk::eval_theory({3, 1, 1, 5, 1, 1}));         // (c,1,a,5,a,1): clause 2, B=5
    CHECK_FALSE(krk::eval_theory({3, 1, 1, 2, 1, 1}));   // (c,1,a,2,a,1): ab2 fires
    CHECK_FALSE(krk::eval_theory({4, 3, 5, 1, 4, 1}));   // (d,3,e,1,d,1): ab1 fires
    CHECK(krk::eval_theory({4, 3, 2, 1, 4, 1}));         // (d,3,b,1,d,1): clause 3
    CHECK(krk::eval_theory({3, 2, 1, 7, 1, 2}));         // (c,2,a,7,a,2): clause 1
    CHECK_FALSE(krk::eval_theory({3, 2, 1, 3, 1, 2}));   // ab3: rook rank adjacent to 2
}

TEST_CASE("theory is total on illegal tuples") {
    CHECK(krk::eval_theory({3, 2, 1, 2, 1, 2}));  // rook on the black king's square
    CHECK(krk::eval_theory({4, 3, 4, 1, 4, 1}));  // rook coincident with black king
}

TEST_CASE("canonical enumeration counts") {
    const auto& canon = krk::enumerate_canonical();
    CHECK(canon.size() == 28056);
    std::size_t mates = 0;
    for (const auto& p : canon) {
        CHECK(krk::is_legal_btm(p));
        if (krk::is_checkmate(p)) ++mates;
    }
    CHECK(mates == 27);
}

TEST_CASE("theory equals the checkmates on canonical legal positions") {
    std::set<krk::KrkPosition> mates, satisfiers;
    for (const auto& p : krk::enumerate_canonical()) {
        if (krk::is_checkmate(p)) mates.insert(p);
        if (krk::eval_theory(p)) satisfiers.insert(p);
    }
    CHECK(mates == satisfiers);
    CHECK(mates.size() == 27);
}

TEST_CASE("theory extension report") {
    const auto rep = krk::theory_extension_report();
    CHECK(rep.canonical_total == 28056);
    CHECK(rep.checkmates == 27);
    CHECK(rep.legal_satisfiers.size() == 27);
    CHECK(rep.illegal_satisfiers.size() >= 3);
    CHECK(rep.illegal_satisfiers.size() == 6);  // derived constant for this convention
    for (const auto& p : rep.illegal_satisfiers) {
        CHECK_FALSE(krk::is_legal_btm(p));
        CHECK(krk::eval_theory(p));
    }
    CHECK(rep.full_board_legal_satisfiers == 95);
    CHECK(rep.full_board_illegal_satisfiers == 17);
}

TEST_CASE("canonicalization maps any legal position into the enumeration") {
    const auto& canon = krk::enumerate_canonical();
    const std::set<krk::KrkPosition> canon_set(canon.begin(), canon.end());
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> d(1, 8);
    int checked = 0;
    while (checked < 2000) {
        const krk::KrkPosition p{d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
        if (!krk::is_legal_btm(p)) continue;
        const auto c = krk::canonicalize(p);
        CHECK(canon_set.count(c) == 1);
        CHECK(krk::canonicalize(c) == c);
        ++checked;
    }
}

TEST_CASE("theory is pattern-local in unconstrained components") {
    // clause 2 leaves the white king's rank free
    for (int rank = 1; rank <= 8; ++rank) CHECK(krk::eval_theory({3, rank, 1, 5, 1, 1}));
    // clause 1 leaves the rook rank free outside the ab3 guard
    for (int rr : {2, 4, 5, 6, 7, 8}) CHECK(krk::eval_theory({3, 2, 1, rr, 1, 2}));
}

TEST_CASE("csv export shape") {
    std::ostringstream csv;
    krk::export_csv(csv);
    std::istringstream in(csv.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "wkf,wkr,wrf,wrr,bkf,bkr,legal,wfw,theory");
    std::size_t rows = 0, wfw = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.size() >= 3 && line[line.size() - 3] == '1') ++wfw;  // wfw column
    }
    CHECK(rows == 28056);
    CHECK(wfw == 27);
}

TEST_CASE("theory hypothesis rejects malformed encodings") {
    const auto h = krk::wfw_theory_hypothesis();
    const auto b = krk::background();
    CHECK(satisfies(h, "(c,1,a,5,a,1)", b));
    CHECK_FALSE(satisfies(h, "c1aAa2", b));
    CHECK_FALSE(satisfies(h, "", b));
    CHECK_FALSE(satisfies(h, "(e,4,h,8,a,1)", b));
    CHECK(b.universe.items().size() == 28056);
}

// ---- factorspace -------------------------------------------------------------

TEST_CASE("tokenization is total") {
    auto t = factorspace::tokenize("NN(O)C");
    REQUIRE(t.has_value());
    CHECK(t->letters == "NNOC");
    CHECK(t->branches == 1);
    CHECK(t->depth == 1);

    CHECK(factorspace::tokenize("NO(P(S)I)").has_value());
    CHECK(factorspace::tokenize("NO(P(S)I)")->depth == 2);
    CHECK_FALSE(factorspace::tokenize("").has_value());
    CHECK_FALSE(factorspace::tokenize("()").has_value());
    CHECK_FALSE(factorspace::tokenize("N(").has_value());
    CHECK_FALSE(factorspace::tokenize("N)").has_value());
    CHECK_FALSE(factorspace::tokenize("NxO").has_value());
    CHECK_FALSE(factorspace::tokenize("cco").has_value());
}

TEST_CASE("weight is the sum of token masses") {
    CHECK(*factorspace::weight_like(std::string(20, 'N')) == 280.0);
    CHECK(*factorspace::weight_like("CNO") == 12.0 + 14.0 + 16.0);
    CHECK_FALSE(factorspace::weight_like("").has_value());
    CHECK_FALSE(factorspace::weight_like("@@").has_value());
}

TEST_CASE("factor ranges hold over random instances") {
    const auto corpus = factorspace::random_instances(800, 99);
    for (const auto& x : corpus) {
        const auto a = factorspace::affinity_like(x);
        const auto s = factorspace::sas_like(x);
        REQUIRE(a.has_value());
        REQUIRE(s.has_value());
        CHECK(*a >= 3.0);
        CHECK(*a <= 10.0);
        CHECK(*s >= 0.0);
        CHECK(*s <= 7.0);
    }
}

TEST_CASE("factors are pure") {
    const auto corpus = factorspace::random_instances(100, 5);
    for (const auto& x : corpus) {
        CHECK(factorspace::affinity_like(x) == factorspace::affinity_like(x));
        CHECK(factorspace::sas_like(x) == factorspace::sas_like(x));
        CHECK(factorspace::weight_like(x) == factorspace::weight_like(x));
    }
}

TEST_CASE("random instance corpus is valid and deterministic") {
    const auto a = factorspace::random_instances(200, 42);
    const auto b = factorspace::random_instances(200, 42);
    CHECK(a == b);
    for (const auto& x : a) CHECK(factorspace::tokenize(x).has_value());
}

TEST_CASE("jaccard novelty") {
    CHECK(factorspace::jaccard_novelty("CNO", {"CNO"}) == 1.0);
    CHECK(factorspace::jaccard_novelty("CCC", {"NNN"}) == 0.0);
    CHECK(factorspace::jaccard_novelty("CN", {"CNOS"}) == 0.5);
    CHECK(factorspace::jaccard_novelty("CN", {"CN", "CNOS"}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(factorspace::jaccard_novelty("CN", {}), std::invalid_argument);
    CHECK_THROWS_AS(factorspace::jaccard_novelty("@@", {"CN"}), std::invalid_argument);
}

TEST_CASE("golden factor values are bit-stable") {
    const std::string path = std::string(SNG_GOLDEN_DIR) + "/factorspace_factors.golden";
    std::ifstream f(path);
    REQUIRE_MESSAGE(f.good(), "missing golden file: " << path);
    std::string line;
    std::size_t checked = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string instance, factor, value;
        REQUIRE(std::getline(row, instance, '\t'));
        REQUIRE(std::getline(row, factor, '\t'));
        REQUIRE(std::getline(row, value, '\t'));
        const double expected = std::strtod(value.c_str(), nullptr);
        std::optional<double> got;
        if (factor == "affinity") got = factorspace::affinity_like(instance);
        if (factor == "molwt") got = factorspace::weight_like(instance);
        if (factor == "sas") got = factorspace::sas_like(instance);
        REQUIRE(got.has_value());
        CHECK(*got == expected);  // exact: golden stores round-trippable digits
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("background registers the built-in factors") {
    const auto b = factorspace::background();
    CHECK(b.factor_value("affinity", "CNO").has_value());
    CHECK(b.factor_value("molwt", "CNO") == 42.0);
    CHECK(b.factor_value("sas", "CNO").has_value());
    CHECK_FALSE(b.factor_value("affinity", "bad token").has_value());
    CHECK_THROWS_AS(b.factor_value("nope", "CNO"), std::out_of_range);

    const auto spec = factorspace::default_spec();
    CHECK(spec.arity() == 3);
    CHECK(spec.bounds()[0] == Interval{3, 10});
    CHECK(spec.bounds()[1] == Interval{200, 700});
    CHECK(spec.bounds()[2] == Interval{0, 7});
    CHECK(spec.directions()[0] == Direction::Maximize);
    CHECK(spec.directions()[2] == Direction::Minimize);
}

// ---- subprocess adapter ------------------------------------------------------

namespace {

fs::path write_script(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "sng-adapter-tests";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    {
        std::ofstream f(path);
        f << body;
    }
    fs::permissions(path, fs::perms::owner_all | fs::perms::group_read | fs::perms::others_read);
    return path;
}

}  // namespace

TEST_CASE("subprocess adapter contract") {
    const fs::path log = fs::temp_directory_path() / "sng-adapter-tests" / "calls.log";
    fs::remove(log);
    const auto script = write_script("ok.sh",
                                     "#!/bin/sh\n"
                                     "echo call >> \"" + log.string() + "\"\n"
                                     "while IFS= read -r line; do\n"
                                     "  if [ \"$line\" = \"bad\" ]; then\n"
                                     "    printf '%s\\tERR\\n' \"$line\"\n"
                                     "  else\n"
                                     "    printf '%s\\t4.25\\n' \"$line\"\n"
                                     "  fi\n"
                                     "done\n");

    factorspace::SubprocessAdapter adapter(script.string());
    const auto result = adapter.invoke("affinity", {"AAA", "bad", "CNO"});
    REQUIRE(result.size() == 3);
    CHECK(result.at("AAA") == 4.25);
    CHECK(result.at("CNO") == 4.25);
    CHECK_FALSE(result.at("bad").has_value());  // only that instance fails

    // second invocation is served from the cache: idempotent per (factor, instance)
    adapter.invoke("affinity", {"AAA", "bad"});
    std::ifstream lf(log);
    std::size_t calls = 0;
    std::string line;
    while (std::getline(lf, line)) ++calls;
    CHECK(calls == 1);

    const auto fn = adapter.factor_fn("affinity");
    CHECK(fn("AAA") == 4.25);
}

TEST_CASE("subprocess adapter treats a nonzero exit as batch failure") {
    const auto script = write_script("fail.sh", "#!/bin/sh\nexit 3\n");
    factorspace::SubprocessAdapter adapter(script.string());
    const auto result = adapter.invoke("affinity", {"AAA", "CNO"});
    CHECK_FALSE(result.at("AAA").has_value());
    CHECK_FALSE(result.at("CNO").has_value());
}
