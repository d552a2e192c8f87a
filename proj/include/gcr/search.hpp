#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcr/objectives.hpp"
#include "gcr/random.hpp"
#include "gcr/semantics.hpp"
#include "gcr/specification.hpp"

namespace gcr {

enum class Algorithm { Nsga3, Wbga, Amosa, Unguided };

[[nodiscard]] auto algorithm_name(Algorithm a) -> std::string_view;
[[nodiscard]] auto parse_algorithm(std::string_view name) -> std::optional<Algorithm>;

struct Weights {
    double consistency = 0.1;
    double resolved = 0.7;
    double syntactic = 0.1;
    double semantic = 0.1;
};

struct AnnealingSchedule {
    double initial_temperature = 1.0;
    /// T(t) = T0 * exp(-cooling_rate * t / budget)
    double cooling_rate = 5.0;

    [[nodiscard]] auto temperature(std::size_t used, std::size_t budget) const -> double;
};

struct SearchConfig {
    Algorithm algorithm = Algorithm::Nsga3;
    std::size_t population = 100;
    /// Maximum number of individuals generated, initial population included.
    std::size_t budget = 1000;
    double crossover_probability = 0.1;
    std::size_t tournament_size = 4;
    Weights weights;
    std::size_t bound = 5;
    std::uint64_t seed = 1;
    AnnealingSchedule wbga_schedule;
    AnnealingSchedule amosa_schedule;
    std::size_t amosa_archive_cap = 50;
    Limits limits;

    /// Throws std::invalid_argument on weights not summing to 1, an empty
    /// population, or a bound outside [1, max_bound].
    void validate() const;
};

struct Candidate {
    Specification spec;
    FitnessVector fitness;
    /// Value of the evaluation counter when the candidate was generated.
    std::size_t birth = 0;
};

/// Componentwise >= with at least one strict >.
[[nodiscard]] auto dominates(FitnessVector const& a, FitnessVector const& b) noexcept -> bool;

[[nodiscard]] auto weighted_fitness(FitnessVector const& v, Weights const& w) noexcept -> double;

/// Set of mutually non-dominated candidates.
class ParetoArchive {
public:
    /// Adds `c` unless some member dominates it; drops members `c`
    /// dominates. Returns whether `c` was added.
    auto insert(Candidate c) -> bool;

    [[nodiscard]] auto members() const noexcept -> std::vector<Candidate> const& { return members_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return members_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return members_.empty(); }

    /// Removes least-crowded members until at most `cap` remain.
    void prune(std::size_t cap);

private:
    std::vector<Candidate> members_;
};

/// Maximal elements of `cands` under `dominates`, ordered by birth.
[[nodiscard]] auto pareto_front(std::vector<Candidate> const& cands) -> ParetoArchive;

/// Crowding distance of each fitness vector within the set.
[[nodiscard]] auto crowding_distances(std::vector<FitnessVector> const& vs) -> std::vector<double>;

/// Non-domination level of each vector (0 = not dominated by anything).
[[nodiscard]] auto nondominated_levels(std::vector<FitnessVector> const& vs) -> std::vector<std::size_t>;

struct Problem {
    Specification original;
    std::vector<Formula> bcs;
};

struct SearchResult {
    /// Valid resolutions, mutually non-dominated.
    ParetoArchive front;
    /// Every generated individual in birth order.
    std::vector<Candidate> generated;
};

[[nodiscard]] auto run_nsga3(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult;
[[nodiscard]] auto run_wbga(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult;
[[nodiscard]] auto run_amosa(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult;
[[nodiscard]] auto run_unguided(Problem const& problem, SearchConfig const& cfg, RandomSource& rng) -> SearchResult;

/// Runs `cfg.algorithm` seeded with `cfg.seed`.
[[nodiscard]] auto run_search(Problem const& problem, SearchConfig const& cfg) -> SearchResult;

}  // namespace gcr
