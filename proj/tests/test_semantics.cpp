#include <doctest.h>

#include "gcr/parser.hpp"
#include "gcr/semantics.hpp"
#include "oracles.hpp"

using namespace gcr;

namespace {

auto to_trace(oracle::Lasso const& l, Alphabet const& ab) -> LassoTrace
{
    LassoTrace t;
    for (auto const& s : l.states) {
        State st = 0;
        for (auto const& a : s) {
            st |= State{ 1 } << *ab.index_of(a);
        }
        t.base.push_back(st);
    }
    t.loop_start = l.loop;
    return t;
}

auto to_lasso(LassoTrace const& t, Alphabet const& ab) -> oracle::Lasso
{
    oracle::Lasso l;
    for (auto s : t.base) {
        std::vector<std::string> names;
        for (std::size_t a = 0; a < ab.size(); ++a) {
            if ((s >> a) & 1U) {
                names.push_back(ab.name(a));
            }
        }
        l.states.push_back(names);
    }
    l.loop = t.loop_start;
    return l;
}

auto const minepump_conflict
    = "G((p && X p) -> X X !h) && G(m -> X !p) && G(h -> X p) && F(h && m)";

}  // namespace

TEST_CASE("eval_lasso on hand-made traces")
{
    Alphabet const pq{ "p", "q" };
    // {p}; {p,q}^w
    CHECK(eval_lasso(parse("G(p || q)"), LassoTrace{ { 0b01, 0b11 }, 1 }, pq));
    CHECK_FALSE(eval_lasso(parse("F p"), LassoTrace{ { 0 }, 0 }, pq));
    // [{p},{p},{q}], loop at 2
    CHECK(eval_lasso(parse("p U q"), LassoTrace{ { 0b01, 0b01, 0b10 }, 2 }, pq));
    CHECK_FALSE(eval_lasso(parse("p U q"), LassoTrace{ { 0b01, 0b00, 0b10 }, 2 }, pq));
    CHECK(eval_lasso(parse("p W q"), LassoTrace{ { 0b01 }, 0 }, pq));
    CHECK_FALSE(eval_lasso(parse("p U q"), LassoTrace{ { 0b01 }, 0 }, pq));
    CHECK(eval_lasso(parse("q R p"), LassoTrace{ { 0b01 }, 0 }, pq));
    CHECK(eval_lasso(parse("X X X q"), LassoTrace{ { 0b00, 0b10 }, 1 }, pq));
    // the loop returns to position 1, where q is false
    CHECK_FALSE(eval_lasso(parse("G F p"), LassoTrace{ { 0b01, 0b00 }, 1 }, pq));
    CHECK(eval_lasso(parse("G F p"), LassoTrace{ { 0b00, 0b01 }, 0 }, pq));
    CHECK(eval_lasso(parse("F G !p"), LassoTrace{ { 0b01, 0b00 }, 1 }, pq));
}

TEST_CASE("eval_lasso rejects malformed input")
{
    Alphabet const p{ "p" };
    CHECK_THROWS_AS((void)eval_lasso(parse("q"), LassoTrace{ { 0 }, 0 }, p), AlphabetMismatchError);
    CHECK_THROWS_AS((void)eval_lasso(parse("p"), LassoTrace{ { 0b10 }, 0 }, p), AlphabetMismatchError);
    CHECK_THROWS((void)eval_lasso(parse("p"), LassoTrace{ { 0 }, 1 }, p));
    CHECK_THROWS((void)eval_lasso(parse("p"), LassoTrace{ {}, 0 }, p));
}

TEST_CASE("eval_lasso agrees with the unrolling oracle")
{
    std::vector<std::string> const names{ "p", "q", "r" };
    Alphabet const ab(names);
    oracle::FormulaGenerator gen(21, names);
    for (int i = 0; i < 3000; ++i) {
        auto const f = gen(1 + gen.pick(6));
        auto const len = 1 + gen.pick(6);
        auto lasso = oracle::base(gen.engine()(), names, len);
        lasso.loop = gen.pick(len);
        CAPTURE(to_string(f));
        REQUIRE(eval_lasso(f, to_trace(lasso, ab), ab) == oracle::holds(f, lasso));
    }
}

TEST_CASE("sat_bounded")
{
    auto const contradiction = parse("p && !p");
    for (std::size_t k = 1; k <= 5; ++k) {
        auto const v = sat_bounded(contradiction, k);
        CHECK_FALSE(v.is_sat());
        CHECK(v.bound() == k);
    }
    auto const v = sat_bounded(parse("G(p || q)"), 2);
    REQUIRE(v.is_sat());
    CHECK(eval_lasso(parse("G(p || q)"), v.witness(), Alphabet{ "p", "q" }));

    Alphabet const pmh{ "p", "m", "h" };
    auto const conflict = parse(minepump_conflict);
    CHECK_FALSE(sat_bounded(conflict, pmh, 5).is_sat());
    CHECK_FALSE(oracle::satisfiable(conflict, { "p", "m", "h" }, 5));

    // needs a base of length 3
    auto const late = parse("!p && X !p && X X p && G(p -> X p)");
    CHECK_FALSE(sat_bounded(late, 2).is_sat());
    REQUIRE(sat_bounded(late, 3).is_sat());
    CHECK(sat_bounded(late, 3).witness().base.size() == 3);

    CHECK_THROWS_AS((void)sat_bounded(parse("p"), 0), std::invalid_argument);
    CHECK_THROWS_AS((void)sat_bounded(parse("p"), max_bound + 1), std::invalid_argument);
    CHECK_THROWS_AS((void)sat_bounded(parse("z"), Alphabet{ "p" }, 2), AlphabetMismatchError);
}

TEST_CASE("sat_bounded agrees with exhaustive enumeration")
{
    std::vector<std::string> const names{ "p", "q" };
    Alphabet const ab(names);
    oracle::FormulaGenerator gen(33, names);
    for (int i = 0; i < 150; ++i) {
        auto const f = gen(1 + gen.pick(5));
        auto const k = 1 + gen.pick(3);
        auto const v = sat_bounded(f, ab, k);
        CAPTURE(to_string(f));
        CAPTURE(k);
        REQUIRE(v.is_sat() == oracle::satisfiable(f, names, k));
        if (v.is_sat()) {
            REQUIRE(v.witness().base.size() <= k);
            REQUIRE(eval_lasso(f, v.witness(), ab));
            REQUIRE(oracle::holds(f, to_lasso(v.witness(), ab)));
        }
    }
}

TEST_CASE("sat_bounded is monotone in the bound")
{
    std::vector<std::string> const names{ "p", "q", "r" };
    Alphabet const ab(names);
    oracle::FormulaGenerator gen(44, names);
    for (int i = 0; i < 200; ++i) {
        auto const f = gen(1 + gen.pick(6));
        bool seen = false;
        for (std::size_t k = 1; k <= 4; ++k) {
            auto const sat = sat_bounded(f, ab, k).is_sat();
            REQUIRE((!seen || sat));
            seen = sat;
        }
    }
}

TEST_CASE("count_bases examples")
{
    CHECK(count_bases(parse("true"), Alphabet{ "p" }, 2) == 4);
    CHECK(count_bases(parse("p && !p"), Alphabet{ "p", "q" }, 3) == 0);
    CHECK(count_bases(parse("G p"), Alphabet{ "p", "q" }, 2) == 4);
    CHECK(oracle::count(parse("G p"), { "p", "q" }, 2) == 4);
    CHECK(count_bases(parse("p"), Alphabet{ "p", "q", "r" }, 3) == 256);
    CHECK_THROWS_AS((void)count_bases(parse("p"), Alphabet{ "p" }, 0), std::invalid_argument);
    Limits tiny;
    tiny.max_bases = 16;
    CHECK_THROWS_AS((void)count_bases(parse("p && q && r"), Alphabet{ "p", "q", "r" }, 2, tiny), ResourceLimitError);
    CHECK_THROWS_AS((void)sat_bounded(parse("p U (q && r)"), Alphabet{ "p", "q", "r" }, 2, tiny), ResourceLimitError);
}

TEST_CASE("count_bases agrees with direct enumeration and basic inequalities")
{
    std::vector<std::string> const names{ "p", "q", "r" };
    Alphabet const ab(names);
    oracle::FormulaGenerator gen(55, names);
    for (int i = 0; i < 120; ++i) {
        auto const f = gen(1 + gen.pick(5));
        auto const g = gen(1 + gen.pick(5));
        auto const k = 1 + gen.pick(3);
        auto const total = std::uint64_t{ 1 } << (names.size() * k);
        auto const cf = count_bases(f, ab, k);
        CAPTURE(to_string(f));
        REQUIRE(cf == oracle::count(f, names, k));
        REQUIRE(cf + count_bases(ltl::neg(f), ab, k) >= total);
        REQUIRE(count_bases(ltl::conj(f, g), ab, k) <= std::min(cf, count_bases(g, ab, k)));
        REQUIRE(cf <= total);
    }
}

TEST_CASE("loop mask tables match per-loop evaluation")
{
    std::vector<std::string> const names{ "p", "q" };
    Alphabet const ab(names);
    oracle::FormulaGenerator gen(66, names);
    for (int i = 0; i < 40; ++i) {
        auto const f = gen(1 + gen.pick(5));
        std::size_t const k = 3;
        auto const table = loop_mask_table(f, ab, k);
        REQUIRE(table.size() == 64);
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            auto lasso = oracle::base(idx, names, k);
            for (std::size_t l = 0; l < k; ++l) {
                lasso.loop = l;
                REQUIRE(((table[idx] >> l) & 1U) == (oracle::holds(f, lasso) ? 1U : 0U));
            }
        }
    }
}

TEST_CASE("trace JSON round trip")
{
    Alphabet const ab{ "p", "m", "h" };
    LassoTrace const t{ { 0b101, 0, 0b010 }, 1 };
    auto const j = trace_to_json(t, ab);
    CHECK(j.dump() == R"({"base":[["p","h"],[],["m"]],"loop":1})");
    CHECK(trace_from_json(nlohmann::json::parse(j.dump()), ab) == t);
    CHECK_THROWS_AS((void)trace_from_json(nlohmann::json::parse(R"({"base":[["x"]],"loop":0})"), ab),
        AlphabetMismatchError);
    CHECK_THROWS((void)trace_from_json(nlohmann::json::parse(R"({"base":[["p"]],"loop":3})"), ab));
    CHECK_THROWS((void)trace_from_json(nlohmann::json::parse(R"({"loop":0})"), ab));
}
