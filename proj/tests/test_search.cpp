#include <doctest.h>

#include <cmath>
#include <limits>

#include "gcr/parser.hpp"
#include "gcr/search.hpp"
#include "gcr/spec_file.hpp"
#include "oracles.hpp"

using namespace gcr;

namespace {

constexpr std::array all_algorithms{ Algorithm::Nsga3, Algorithm::Wbga, Algorithm::Amosa, Algorithm::Unguided };

auto minepump() -> SpecFile { return load_spec_file(std::string(GCR_SPECS_DIR) + "/minepump.spec"); }

auto small_config(Algorithm a) -> SearchConfig
{
    SearchConfig cfg;
    cfg.algorithm = a;
    cfg.population = 10;
    cfg.budget = 60;
    cfg.bound = 4;
    cfg.seed = 3;
    return cfg;
}

auto random_vector(oracle::FormulaGenerator& gen) -> FitnessVector
{
    // coarse values so that ties and duplicates occur
    auto v = [&] { return static_cast<double>(gen.pick(5)) / 4.0; };
    return FitnessVector{ v(), v(), v(), v() };
}

auto births(ParetoArchive const& a) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (auto const& m : a.members()) {
        out.push_back(m.birth);
    }
    return out;
}

}  // namespace

TEST_CASE("dominance and weighted fitness")
{
    FitnessVector const a{ 1.0, 1.0, 0.5, 0.5 };
    FitnessVector const b{ 1.0, 0.5, 0.5, 0.5 };
    CHECK(dominates(a, b));
    CHECK_FALSE(dominates(b, a));
    CHECK_FALSE(dominates(a, a));
    CHECK_FALSE(dominates(FitnessVector{ 1, 0, 1, 0 }, FitnessVector{ 0, 1, 0, 1 }));
    CHECK(weighted_fitness(FitnessVector{ 1.0, 1.0, 0.75, 0.7 }, Weights{}) == doctest::Approx(0.945));
    CHECK(weighted_fitness(FitnessVector{ 1.0, 0.5, 0.75, 0.7 }, Weights{}) == doctest::Approx(0.595));
    CHECK(weighted_fitness(FitnessVector{ 1.0, 1.0, 0.0, 0.35 }, Weights{}) == doctest::Approx(0.835));
    CHECK(weighted_fitness(FitnessVector{ 1.0, 1.0, 0.1, 0.35 }, Weights{}) == doctest::Approx(0.845));

    oracle::FormulaGenerator gen(1, { "p" });
    for (int i = 0; i < 2000; ++i) {
        auto const x = random_vector(gen);
        auto const y = random_vector(gen);
        REQUIRE(dominates(x, y) == oracle::dominates(x, y));
        if (dominates(x, y)) {
            REQUIRE(weighted_fitness(x, Weights{}) > weighted_fitness(y, Weights{}));
        }
    }
}

TEST_CASE("pareto_front matches brute force and ignores input order")
{
    oracle::FormulaGenerator gen(2, { "p" });
    for (int round = 0; round < 50; ++round) {
        std::vector<Candidate> cands;
        std::vector<FitnessVector> vs;
        for (std::size_t i = 0; i < 100; ++i) {
            auto const v = random_vector(gen);
            vs.push_back(v);
            cands.push_back(Candidate{ {}, v, i + 1 });
        }
        auto const front = pareto_front(cands);
        std::vector<std::size_t> expected;
        for (auto i : oracle::maximal(vs)) {
            expected.push_back(i + 1);
        }
        REQUIRE(births(front) == expected);

        auto shuffled = cands;
        std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
        REQUIRE(births(pareto_front(shuffled)) == expected);

        for (auto const& x : front.members()) {
            for (auto const& y : front.members()) {
                REQUIRE_FALSE(dominates(x.fitness, y.fitness));
            }
        }
    }
}

TEST_CASE("archive insert and prune")
{
    ParetoArchive a;
    CHECK(a.insert(Candidate{ {}, { 1, 1, 0.5, 0.5 }, 1 }));
    CHECK_FALSE(a.insert(Candidate{ {}, { 1, 1, 0.4, 0.5 }, 2 }));
    CHECK(a.insert(Candidate{ {}, { 1, 1, 0.6, 0.4 }, 3 }));
    CHECK(a.insert(Candidate{ {}, { 1, 1, 0.6, 0.6 }, 4 }));
    CHECK(births(a) == std::vector<std::size_t>{ 4 });

    ParetoArchive b;
    for (std::size_t i = 0; i <= 10; ++i) {
        auto const x = static_cast<double>(i) / 10.0;
        REQUIRE(b.insert(Candidate{ {}, { 1, 1, x, 1 - x }, i + 1 }));
    }
    b.prune(4);
    CHECK(b.size() == 4);
    // the extremes have infinite crowding distance and survive
    auto const kept = births(b);
    CHECK(std::find(kept.begin(), kept.end(), 1U) != kept.end());
    CHECK(std::find(kept.begin(), kept.end(), 11U) != kept.end());
}

TEST_CASE("crowding distances and non-domination levels")
{
    auto const inf = std::numeric_limits<double>::infinity();
    std::vector<FitnessVector> const line{ { 1, 1, 0.0, 1.0 }, { 1, 1, 0.25, 0.75 }, { 1, 1, 0.5, 0.5 },
        { 1, 1, 1.0, 0.0 } };
    auto const d = crowding_distances(line);
    CHECK(d[0] == inf);
    CHECK(d[3] == inf);
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == doctest::Approx(1.5));
    CHECK(crowding_distances({ FitnessVector{}, FitnessVector{} }) == std::vector<double>{ inf, inf });

    std::vector<FitnessVector> const vs{ { 1, 1, 1, 1 }, { 0, 0, 0, 0 }, { 1, 0, 1, 0 }, { 0, 1, 0, 1 },
        { 0, 0, 0, 1 } };
    CHECK(nondominated_levels(vs) == std::vector<std::size_t>{ 0, 3, 1, 1, 2 });

    oracle::FormulaGenerator gen(3, { "p" });
    for (int round = 0; round < 30; ++round) {
        std::vector<FitnessVector> r;
        for (int i = 0; i < 40; ++i) {
            r.push_back(random_vector(gen));
        }
        auto const level = nondominated_levels(r);
        auto const top = oracle::maximal(r);
        for (std::size_t i = 0; i < r.size(); ++i) {
            REQUIRE((level[i] == 0) == (std::find(top.begin(), top.end(), i) != top.end()));
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (dominates(r[i], r[j])) {
                    REQUIRE(level[i] < level[j]);
                }
            }
        }
    }
}

TEST_CASE("annealing schedule")
{
    AnnealingSchedule const s;
    CHECK(s.temperature(0, 100) == 1.0);
    CHECK(s.temperature(100, 100) == doctest::Approx(std::exp(-5.0)));
    CHECK(s.temperature(50, 100) < s.temperature(10, 100));
}

TEST_CASE("configuration validation")
{
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.weights.resolved = 0.8;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.population = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.bound = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.bound = max_bound + 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.crossover_probability = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK(parse_algorithm("amosa") == Algorithm::Amosa);
    CHECK_FALSE(parse_algorithm("nsga2").has_value());
    for (auto a : all_algorithms) {
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    }
}

TEST_CASE("every algorithm respects the budget and returns valid, non-dominated fronts")
{
    auto const mp = minepump();
    auto const problem = mp.problem();
    for (auto a : all_algorithms) {
        CAPTURE(algorithm_name(a));
        auto const cfg = small_config(a);
        auto const r = run_search(problem, cfg);
        REQUIRE(r.generated.size() == cfg.budget);
        for (std::size_t i = 0; i < r.generated.size(); ++i) {
            REQUIRE(r.generated[i].birth == i + 1);
            REQUIRE(r.generated[i].spec.dom == problem.original.dom);
        }
        for (auto const& m : r.front.members()) {
            REQUIRE(is_valid_resolution(problem.original, m.spec, problem.bcs, cfg.bound));
            for (auto const& n : r.front.members()) {
                REQUIRE_FALSE(dominates(m.fitness, n.fitness));
            }
        }
        auto const again = run_search(problem, cfg);
        REQUIRE(births(again.front) == births(r.front));
        for (std::size_t i = 0; i < r.generated.size(); ++i) {
            REQUIRE(again.generated[i].spec == r.generated[i].spec);
        }
    }
}

TEST_CASE("population algorithms only run whole generations")
{
    auto const problem = minepump().problem();
    for (auto a : { Algorithm::Nsga3, Algorithm::Wbga }) {
        auto cfg = small_config(a);
        cfg.budget = 25;
        CHECK(run_search(problem, cfg).generated.size() == 20);
        cfg.budget = 15;
        CHECK(run_search(problem, cfg).generated.size() == 10);
        cfg.budget = 4;
        CHECK(run_search(problem, cfg).generated.size() == 4);
    }
}

TEST_CASE("a zero budget gives an empty run")
{
    auto const problem = minepump().problem();
    for (auto a : all_algorithms) {
        auto cfg = small_config(a);
        cfg.budget = 0;
        auto const r = run_search(problem, cfg);
        CHECK(r.generated.empty());
        CHECK(r.front.empty());
    }
    auto cfg = small_config(Algorithm::Amosa);
    cfg.budget = 1;
    CHECK(run_search(problem, cfg).generated.size() == 1);
}

TEST_CASE("no front when no candidate can resolve the conflict")
{
    // nothing is consistent with `false`
    Specification const s{ Alphabet{ "p", "q" }, {}, { parse("G p"), parse("F q") } };
    Problem const problem{ s, { parse("false") } };
    for (auto a : all_algorithms) {
        auto cfg = small_config(a);
        cfg.bound = 3;
        auto const r = run_search(problem, cfg);
        CHECK(r.generated.size() == cfg.budget);
        CHECK(r.front.empty());
    }
}

TEST_CASE("different seeds explore differently")
{
    auto const problem = minepump().problem();
    auto cfg = small_config(Algorithm::Nsga3);
    auto const a = run_search(problem, cfg);
    cfg.seed = 4;
    auto const b = run_search(problem, cfg);
    bool differ = false;
    for (std::size_t i = 0; i < a.generated.size(); ++i) {
        differ = differ || !(a.generated[i].spec == b.generated[i].spec);
    }
    CHECK(differ);
}
