#include "gcr/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "gcr/operators.hpp"

namespace gcr {

auto algorithm_name(Algorithm a) -> std::string_view
{
    switch (a) {
    case Algorithm::Nsga3: return "nsga3";
    case Algorithm::Wbga: return "wbga";
    case Algorithm::Amosa: return "amosa";
    case Algorithm::Unguided: return "unguided";
    }
    return "?";
}

auto parse_algorithm(std::string_view name) -> std::optional<Algorithm>
{
    for (auto a : { Algorithm::Nsga3, Algorithm::Wbga, Algorithm::Amosa, Algorithm::Unguided }) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

auto AnnealingSchedule::temperature(std::size_t used, std::size_t budget) const -> double
{
    if (budget == 0) {
        return initial_temperature;
    }
    return initial_temperature * std::exp(-cooling_rate * static_cast<double>(used) / static_cast<double>(budget));
}

void SearchConfig::validate() const
{
    auto const w = weights.consistency + weights.resolved + weights.syntactic + weights.semantic;
    if (std::abs(w - 1.0) > 1e-9) {
        throw std::invalid_argument("objective weights must sum to 1");
    }
    for (auto x : { weights.consistency, weights.resolved, weights.syntactic, weights.semantic }) {
        if (x < 0.0) {
            throw std::invalid_argument("objective weights must be nonnegative");
        }
    }
    if (population == 0) {
        throw std::invalid_argument("population size must be positive");
    }
    if (tournament_size == 0) {
        throw std::invalid_argument("tournament size must be positive");
    }
    if (crossover_probability < 0.0 || crossover_probability > 1.0) {
        throw std::invalid_argument("crossover probability must be in [0, 1]");
    }
    if (bound < 1 || bound > max_bound) {
        throw std::invalid_argument("bound must be in [1, " + std::to_string(max_bound) + "]");
    }
    if (amosa_archive_cap == 0) {
        throw std::invalid_argument("archive cap must be positive");
    }
    for (auto const& s : { wbga_schedule, amosa_schedule }) {
        if (s.initial_temperature <= 0.0 || s.cooling_rate < 0.0) {
            throw std::invalid_argument("annealing schedules need T0 > 0 and a nonnegative cooling rate");
        }
    }
}

auto dominates(FitnessVector const& a, FitnessVector const& b) noexcept -> bool
{
    std::array const x{ a.consistency, a.resolved, a.syntactic, a.semantic };
    std::array const y{ b.consistency, b.resolved, b.syntactic, b.semantic };
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) {
            return false;
        }
        strict = strict || x[i] > y[i];
    }
    return strict;
}

auto weighted_fitness(FitnessVector const& v, Weights const& w) noexcept -> double
{
    return w.consistency * v.consistency + w.resolved * v.resolved + w.syntactic * v.syntactic + w.semantic * v.semantic;
}

auto crowding_distances(std::vector<FitnessVector> const& vs) -> std::vector<double>
{
    auto const n = vs.size();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    auto const component = [](FitnessVector const& v, std::size_t m) {
        switch (m) {
        case 0: return v.consistency;
        case 1: return v.resolved;
        case 2: return v.syntactic;
        default: return v.semantic;
        }
    };
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < 4; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{ 0 });
        std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return component(vs[a], m) < component(vs[b], m); });
        auto const lo = component(vs[order.front()], m);
        auto const hi = component(vs[order.back()], m);
        if (hi <= lo) {
            continue;
        }
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            dist[order[i]] += (component(vs[order[i + 1]], m) - component(vs[order[i - 1]], m)) / (hi - lo);
        }
    }
    return dist;
}

auto nondominated_levels(std::vector<FitnessVector> const& vs) -> std::vector<std::size_t>
{
    auto const n = vs.size();
    std::vector<std::size_t> dominated_by(n, 0);
    std::vector<std::vector<std::size_t>> dominating(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(vs[i], vs[j])) {
                dominating[i].push_back(j);
                ++dominated_by[j];
            }
        }
    }
    std::vector<std::size_t> level(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_by[i] == 0) {
            current.push_back(i);
        }
    }
    for (std::size_t l = 0; !current.empty(); ++l) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            level[i] = l;
            for (auto j : dominating[i]) {
                if (--dominated_by[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        current = std::move(next);
    }
    return level;
}

auto ParetoArchive::insert(Candidate c) -> bool
{
    for (auto const& m : members_) {
        if (dominates(m.fitness, c.fitness)) {
            return false;
        }
    }
    std::erase_if(members_, [&](Candidate const& m) { return dominates(c.fitness, m.fitness); });
    members_.push_back(std::move(c));
    return true;
}

void ParetoArchive::prune(std::size_t cap)
{
    while (members_.size() > cap) {
        std::vector<FitnessVector> vs;
        for (auto const& m : members_) {
            vs.push_back(m.fitness);
        }
        auto const dist = crowding_distances(vs);
        std::size_t worst = 0;
        for (std::size_t i = 1; i < members_.size(); ++i) {
            if (dist[i] < dist[worst] || (dist[i] == dist[worst] && members_[i].birth > members_[worst].birth)) {
                worst = i;
            }
        }
        members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(worst));
    }
}

auto pareto_front(std::vector<Candidate> const& cands) -> ParetoArchive
{
    std::vector<Candidate> sorted = cands;
    std::stable_sort(sorted.begin(), sorted.end(), [](Candidate const& a, Candidate const& b) { return a.birth < b.birth; });
    ParetoArchive front;
    for (auto& c : sorted) {
        front.insert(std::move(c));
    }
    return front;
}

namespace {

struct GoalsHash {
    auto operator()(std::vector<Formula> const& goals) const noexcept -> std::size_t
    {
        std::size_t h = goals.size();
        for (auto const& g : goals) {
            h ^= g.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Budget accounting, evaluation and bookkeeping shared by all algorithms.
class Session {
public:
    Session(Problem const& problem, SearchConfig const& cfg)
        : evaluator_(problem.original, problem.bcs, cfg.bound, cfg.limits)
        , budget_(cfg.budget)
    {
    }

    [[nodiscard]] auto remaining() const -> std::size_t { return budget_ - used_; }
    [[nodiscard]] auto used() const -> std::size_t { return used_; }

    auto make(Specification spec) -> Candidate
    {
        if (used_ >= budget_) {
            throw std::logic_error("evaluation budget exhausted");
        }
        auto fitness = evaluator_.evaluate(spec);
        Candidate c{ std::move(spec), fitness, ++used_ };
        if (is_valid(c.fitness) && seen_valid_.insert(c.spec.goals).second) {
            valid_.push_back(c);
        }
        generated_.push_back(c);
        return c;
    }

    auto finish() -> SearchResult { return SearchResult{ pareto_front(valid_), std::move(generated_) }; }

private:
    FitnessEvaluator evaluator_;
    std::size_t budget_;
    std::size_t used_ = 0;
    std::vector<Candidate> generated_;
    std::vector<Candidate> valid_;
    std::unordered_set<std::vector<Formula>, GoalsHash> seen_valid_;
};

auto initial_population(Session& session, Specification const& original, std::size_t size, RandomSource& rng)
    -> std::vector<Candidate>
{
    std::vector<Candidate> pop;
    auto const n = std::min(size, session.remaining());
    for (std::size_t i = 0; i < n; ++i) {
        pop.push_back(session.make(mutate_spec(original, rng)));
    }
    return pop;
}

auto fitness_of(std::vector<Candidate> const& pop) -> std::vector<FitnessVector>
{
    std::vector<FitnessVector> vs;
    vs.reserve(pop.size());
    for (auto const& c : pop) {
        vs.push_back(c.fitness);
    }
    return vs;
}

auto tournament(std::vector<Candidate> const& pop, std::vector<std::size_t> const& level, std::size_t size, RandomSource& rng)
    -> Candidate const&
{
    std::size_t best = rng.index(pop.size());
    for (std::size_t i = 1; i < size; ++i) {
        auto const c = rng.index(pop.size());
        if (level[c] < level[best] || (level[c] == level[best] && pop[c].birth < pop[best].birth)) {
            best = c;
        }
    }
    return pop[best];
}

auto offspring_spec(Specification const& first, Specification const* second, RandomSource& rng) -> Specification
{
    auto child = second != nullptr ? crossover_specs(first, *second, rng) : first;
    return mutate_spec(child, rng);
}

/// Survivors taken round-robin across non-domination levels: one from each
/// level in turn, most isolated (largest crowding distance) first.
auto select_by_levels(std::vector<Candidate> pool, std::size_t n) -> std::vector<Candidate>
{
    auto const vs = fitness_of(pool);
    auto const level = nondominated_levels(vs);
    auto const depth = *std::max_element(level.begin(), level.end()) + 1;
    std::vector<std::vector<std::size_t>> levels(depth);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        levels[level[i]].push_back(i);
    }
    for (auto& members : levels) {
        std::vector<FitnessVector> lv;
        for (auto i : members) {
            lv.push_back(vs[i]);
        }
        auto const dist = crowding_distances(lv);
        std::vector<std::size_t> order(members.size());
        std::iota(order.begin(), order.end(), std::size_t{ 0 });
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist[a] != dist[b]) {
                return dist[a] > dist[b];
            }
            return pool[members[a]].birth < pool[members[b]].birth;
        });
        std::vector<std::size_t> sorted;
        for (auto o : order) {
            sorted.push_back(members[o]);
        }
        members = std::move(sorted);
    }
    std::vector<Candidate> survivors;
    for (std::size_t round = 0; survivors.size() < n; ++round) {
        bool any = false;
        for (auto const& members : levels) {
            if (round < members.size() && survivors.size() < n) {
                survivors.push_back(pool[members[round]]);
                any = true;
            }
        }
        if (!any) {
            break;
        }
    }
    return survivors;
}

auto boltzmann_pick(std::vector<double> const& cumulative, RandomSource& rng) -> std::size_t
{
    auto const u = rng.uniform() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace

auto run_nsga3(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult
{
    cfg.validate();
    Session session(problem, cfg);
    auto pop = initial_population(session, problem.original, cfg.population, rng);
    while (!pop.empty() && session.remaining() >= cfg.population) {
        auto const level = nondominated_levels(fitness_of(pop));
        std::vector<Candidate> pool = pop;
        for (std::size_t i = 0; i < cfg.population; ++i) {
            auto const& a = tournament(pop, level, cfg.tournament_size, rng);
            Specification const* b = nullptr;
            if (rng.bernoulli(cfg.crossover_probability)) {
                b = &tournament(pop, level, cfg.tournament_size, rng).spec;
            }
            pool.push_back(session.make(offspring_spec(a.spec, b, rng)));
        }
        pop = select_by_levels(std::move(pool), cfg.population);
    }
    return session.finish();
}

auto run_wbga(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult
{
    cfg.validate();
    Session session(problem, cfg);
    auto pop = initial_population(session, problem.original, cfg.population, rng);
    while (!pop.empty() && session.remaining() >= cfg.population) {
        auto const temperature = cfg.wbga_schedule.temperature(session.used(), cfg.budget);
        std::vector<double> score;
        for (auto const& c : pop) {
            score.push_back(weighted_fitness(c.fitness, cfg.weights));
        }
        auto const top = *std::max_element(score.begin(), score.end());
        std::vector<double> cumulative;
        double acc = 0.0;
        for (auto s : score) {
            acc += std::exp((s - top) / temperature);
            cumulative.push_back(acc);
        }
        std::vector<Candidate> pool = pop;
        for (std::size_t i = 0; i < cfg.population; ++i) {
            auto const& a = pop[boltzmann_pick(cumulative, rng)];
            Specification const* b = nullptr;
            if (rng.bernoulli(cfg.crossover_probability)) {
                b = &pop[boltzmann_pick(cumulative, rng)].spec;
            }
            pool.push_back(session.make(offspring_spec(a.spec, b, rng)));
        }
        std::stable_sort(pool.begin(), pool.end(), [&](Candidate const& x, Candidate const& y) {
            auto const fx = weighted_fitness(x.fitness, cfg.weights);
            auto const fy = weighted_fitness(y.fitness, cfg.weights);
            if (fx != fy) {
                return fx > fy;
            }
            return x.birth < y.birth;
        });
        pool.resize(cfg.population);
        pop = std::move(pool);
    }
    return session.finish();
}

auto run_amosa(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult
{
    cfg.validate();
    Session session(problem, cfg);
    if (session.remaining() == 0) {
        return session.finish();
    }
    ParetoArchive archive;
    auto current = session.make(mutate_spec(problem.original, rng));
    if (is_valid(current.fitness)) {
        archive.insert(current);
    }
    while (session.remaining() > 0) {
        auto const temperature = cfg.amosa_schedule.temperature(session.used(), cfg.budget);
        auto next = session.make(mutate_spec(current.spec, rng));
        if (is_valid(next.fitness)) {
            bool duplicate = false;
            for (auto const& m : archive.members()) {
                duplicate = duplicate || m.spec.goals == next.spec.goals;
            }
            if (!duplicate && archive.insert(next)) {
                archive.prune(cfg.amosa_archive_cap);
            }
        }
        bool accept = true;
        if (dominates(current.fitness, next.fitness)) {
            auto const delta = weighted_fitness(current.fitness, cfg.weights) - weighted_fitness(next.fitness, cfg.weights);
            accept = rng.uniform() < std::exp(-delta / temperature);
        }
        if (accept) {
            current = std::move(next);
        }
    }
    auto result = session.finish();
    result.front = pareto_front(archive.members());
    return result;
}

auto run_unguided(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult
{
    cfg.validate();
    Session session(problem, cfg);
    std::vector<Specification> pool{ problem.original };
    while (pool.size() - 1 < cfg.budget) {
        auto const& parent = pool[rng.index(pool.size())];
        auto child = mutate_spec(parent, rng);
        pool.push_back(std::move(child));
    }
    for (std::size_t i = 1; i < pool.size(); ++i) {
        session.make(std::move(pool[i]));
    }
    return session.finish();
}

auto run_search(Problem const& problem, SearchConfig const& cfg) -> SearchResult
{
    RandomSource rng(cfg.seed);
    switch (cfg.algorithm) {
    case Algorithm::Nsga3: return run_nsga3(problem, cfg, rng);
    case Algorithm::Wbga: return run_wbga(problem, cfg, rng);
    case Algorithm::Amosa: return run_amosa(problem, cfg, rng);
    case Algorithm::Unguided: return run_unguided(problem, cfg, rng);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace gcr
