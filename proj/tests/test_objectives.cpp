#include <doctest.h>

#include "gcr/objectives.hpp"
#include "gcr/spec_file.hpp"
#include "oracles.hpp"

using namespace gcr;

namespace {

auto minepump() -> SpecFile { return load_spec_file(std::string(GCR_SPECS_DIR) + "/minepump.spec"); }

auto spec_of(std::vector<std::string> const& aps, std::vector<char const*> dom, std::vector<char const*> goals)
    -> Specification
{
    Specification s;
    s.alphabet = Alphabet(aps);
    for (auto d : dom) {
        s.dom.push_back(parse(d));
    }
    for (auto g : goals) {
        s.goals.push_back(parse(g));
    }
    return s;
}

auto resolution1(Specification const& s) -> Specification
{
    return s.with_goals({ parse("G(m -> X !p)"), parse("G(h && !m -> X p)") });
}

auto resolution2(Specification const& s) -> Specification
{
    return s.with_goals({ parse("G(m && !h -> X !p)"), parse("G(h -> X p)") });
}

}  // namespace

TEST_CASE("check_bc on the mine pump")
{
    auto const mp = minepump();
    auto const s = mp.specification();
    auto const r = check_bc(s, parse("F(h && m)"), 5);
    CHECK(r.inconsistency);
    CHECK(r.minimality == std::vector<bool>{ true, true });
    CHECK(r.non_triviality);
    CHECK(r.holds);

    auto const f = check_bc(s, parse("false"), 5);
    CHECK(f.inconsistency);
    CHECK(f.minimality == std::vector<bool>{ false, false });
    CHECK_FALSE(f.holds);

    auto const trivial = check_bc(s, ltl::neg(s.goal_conjunction()), 5);
    CHECK_FALSE(trivial.non_triviality);
    CHECK_FALSE(trivial.holds);

    // `true` is consistent with everything, so it is no conflict at all
    auto const t = check_bc(s, parse("true"), 5);
    CHECK_FALSE(t.inconsistency);
    CHECK_FALSE(t.holds);
}

TEST_CASE("consistency")
{
    auto const s = minepump().specification();
    CHECK(consistency(s, 5) == 1.0);
    CHECK(consistency(spec_of({ "p" }, {}, { "p", "!p" }), 5) == 0.0);
    CHECK(consistency(spec_of({ "p" }, { "G !p" }, { "G p" }), 5) == 0.5);
    CHECK(consistency(spec_of({ "p" }, { "G !p" }, { "F !p" }), 5) == 1.0);
}

TEST_CASE("resolved_ratio")
{
    auto const mp = minepump();
    auto const s = mp.specification();
    CHECK(resolved_ratio(resolution1(s), mp.bcs, 5) == 1.0);
    CHECK(resolved_ratio(resolution2(s), mp.bcs, 5) == 1.0);
    CHECK(resolved_ratio(s, mp.bcs, 5) == 0.0);
    // the goals alone already exclude the bc
    CHECK_FALSE(sat_bounded(ltl::conj(mp.bcs[0], s.goal_conjunction()), s.alphabet, 5).is_sat());
    CHECK(resolved_ratio(s, { parse("true") }, 5) == 1.0);
    CHECK(resolved_ratio(s, { parse("true"), parse("F(h && m)") }, 5) == 0.5);
    CHECK_THROWS_AS((void)resolved_ratio(s, {}, 5), std::invalid_argument);
}

TEST_CASE("token Levenshtein agrees with the recursive definition")
{
    CHECK(token_levenshtein({ "G", "(", "p", ")" }, { "G", "(", "q", ")" }) == 1);
    CHECK(token_levenshtein({}, { "a", "b" }) == 2);
    CHECK(token_levenshtein({ "a", "b", "c" }, {}) == 3);
    oracle::FormulaGenerator gen(3, { "p", "q", "r" });
    for (int i = 0; i < 300; ++i) {
        auto const a = render(gen(1 + gen.pick(5)));
        auto const b = render(gen(1 + gen.pick(5)));
        REQUIRE(token_levenshtein(a, b) == oracle::edit_distance(a, b));
        REQUIRE(token_levenshtein(a, b) == token_levenshtein(b, a));
    }
}

TEST_CASE("syntactic similarity")
{
    Alphabet const ab{ "p", "q", "r" };
    auto const with = [&](std::vector<char const*> goals) {
        Specification s{ ab, {}, {} };
        for (auto g : goals) {
            s.goals.push_back(parse(g));
        }
        return s;
    };
    CHECK(syntactic_similarity(with({ "G p" }), with({ "G p" })) == 1.0);
    CHECK(syntactic_similarity(with({ "G p" }), with({ "G q" })) == 0.75);
    CHECK(syntactic_similarity(with({ "p" }), with({ "p && q && r" })) < 0.5);
    // streams "p" and "( p && q ) && r": distance 6, longest 7
    CHECK(syntactic_similarity(with({ "p" }), with({ "p && q && r" })) == doctest::Approx(1.0 / 7.0));

    oracle::FormulaGenerator gen(4, { "p", "q", "r" });
    for (int i = 0; i < 300; ++i) {
        Specification a{ ab, {}, { gen(1 + gen.pick(4)), gen(1 + gen.pick(4)) } };
        Specification b{ ab, {}, { gen(1 + gen.pick(4)), gen(1 + gen.pick(4)) } };
        auto const s = syntactic_similarity(a, b);
        REQUIRE(s == syntactic_similarity(b, a));
        REQUIRE(s >= 0.0);
        REQUIRE(s <= 1.0);
        REQUIRE((s == 1.0) == (goal_tokens(a) == goal_tokens(b)));
    }
}

TEST_CASE("single token edits move the distance by at most one")
{
    oracle::FormulaGenerator gen(8, { "p", "q" });
    for (int i = 0; i < 300; ++i) {
        auto const a = render(gen(1 + gen.pick(5)));
        auto const b = render(gen(1 + gen.pick(5)));
        auto edited = b;
        auto const pos = gen.pick(edited.size());
        switch (gen.pick(3)) {
        case 0: edited.erase(edited.begin() + static_cast<std::ptrdiff_t>(pos)); break;
        case 1: edited.insert(edited.begin() + static_cast<std::ptrdiff_t>(pos), "x"); break;
        default: edited[pos] = "y"; break;
        }
        auto const d0 = static_cast<long>(token_levenshtein(a, b));
        auto const d1 = static_cast<long>(token_levenshtein(a, edited));
        REQUIRE(std::abs(d0 - d1) <= 1);
    }
}

TEST_CASE("semantic similarity")
{
    auto const mp = minepump();
    auto const s = mp.specification();
    CHECK(semantic_similarity(s, s, 5) == 1.0);

    auto const p = spec_of({ "p" }, {}, { "p" });
    auto const not_p = spec_of({ "p" }, {}, { "!p" });
    CHECK(semantic_similarity(p, not_p, 3) == 0.0);
    auto const unsat = spec_of({ "p" }, {}, { "p && !p" });
    CHECK(semantic_similarity(unsat, unsat, 3) == 0.0);

    // Counted by the direct enumerator over 8^5 bases: S implies R1, so the
    // value is #S / #R1.
    auto const r1 = resolution1(s);
    std::vector<std::string> const names{ "p", "m", "h" };
    auto const n_s = oracle::count(s.conjunction(), names, 5);
    auto const n_r1 = oracle::count(r1.conjunction(), names, 5);
    auto const n_both = oracle::count(ltl::conj(s.conjunction(), r1.conjunction()), names, 5);
    CHECK(n_both == n_s);
    CHECK(n_s == 1168);
    CHECK(n_r1 == 3712);
    CHECK(semantic_similarity(s, r1, 5) == doctest::Approx(1168.0 / 3712.0).epsilon(1e-12));
    CHECK(semantic_similarity(r1, s, 5) == semantic_similarity(s, r1, 5));
}

TEST_CASE("semantic similarity is symmetric and zero for inconsistent candidates")
{
    Alphabet const ab{ "p", "q" };
    oracle::FormulaGenerator gen(9, { "p", "q" });
    Specification const orig{ ab, { parse("G(p -> X q)") }, { parse("F p") } };
    for (int i = 0; i < 60; ++i) {
        Specification const cand{ ab, orig.dom, { gen(1 + gen.pick(4)) } };
        auto const v = semantic_similarity(orig, cand, 3);
        REQUIRE(v == semantic_similarity(cand, orig, 3));
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
        if (consistency(cand, 3) < 1.0) {
            REQUIRE(v == 0.0);
        }
    }
}

TEST_CASE("valid resolutions")
{
    auto const mp = minepump();
    auto const s = mp.specification();
    CHECK(is_valid_resolution(s, resolution1(s), mp.bcs, 5));
    CHECK(is_valid_resolution(s, resolution2(s), mp.bcs, 5));
    CHECK_FALSE(is_valid_resolution(s, s, mp.bcs, 5));

    auto const v = evaluate_fitness(s, s, mp.bcs, 5);
    CHECK(v == FitnessVector{ 1.0, 0.0, 1.0, 1.0 });
}

TEST_CASE("bounded equivalence")
{
    Alphabet const ab{ "p", "q" };
    CHECK(bounded_equivalent(parse("G p"), parse("!F !p"), ab, 4));
    CHECK(bounded_equivalent(parse("p W q"), parse("G p || p U q"), ab, 4));
    CHECK(bounded_equivalent(parse("p R q"), parse("!(!p U !q)"), ab, 4));
    CHECK_FALSE(bounded_equivalent(parse("p U q"), parse("p W q"), ab, 4));
}

TEST_CASE("the memoized evaluator agrees with the one-at-a-time objectives")
{
    auto const mp = minepump();
    auto const s = mp.specification();
    FitnessEvaluator eval(s, mp.bcs, 4);
    oracle::FormulaGenerator gen(77, { "p", "m", "h" });
    std::vector<Specification> cands{ s, resolution1(s), resolution2(s) };
    for (int i = 0; i < 60; ++i) {
        cands.push_back(s.with_goals({ gen(1 + gen.pick(5)), gen(1 + gen.pick(5)) }));
    }
    for (auto const& c : cands) {
        CAPTURE(to_string(c.goals[0]));
        CAPTURE(to_string(c.goals[1]));
        auto const expected = evaluate_fitness(s, c, mp.bcs, 4);
        auto const got = eval.evaluate(c);
        REQUIRE(got.consistency == expected.consistency);
        REQUIRE(got.resolved == expected.resolved);
        REQUIRE(got.syntactic == expected.syntactic);
        REQUIRE(got.semantic == doctest::Approx(expected.semantic).epsilon(1e-12));
    }
    auto const before = eval.computed();
    (void)eval.evaluate(cands[5]);
    CHECK(eval.computed() == before);

    auto other = s;
    other.dom.clear();
    CHECK_THROWS_AS((void)eval.evaluate(other), std::invalid_argument);
    CHECK_THROWS_AS(FitnessEvaluator(s, {}, 4), std::invalid_argument);
}

TEST_CASE("checks that exceed the enumeration budget count as failures")
{
    auto const s = minepump().specification();
    Limits tiny;
    tiny.max_bases = 8;
    CHECK(consistency(s, 5, tiny) == 0.0);
    CHECK(resolved_ratio(s.with_goals({ parse("true") }), { parse("true") }, 5, tiny) == 0.0);
    CHECK_THROWS_AS(FitnessEvaluator(s, { parse("F(h && m)") }, 5, tiny), ResourceLimitError);
}
