#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gcr/formula.hpp"
#include "gcr/parser.hpp"
#include "gcr/semantics.hpp"
#include "gcr/specification.hpp"

namespace gcr {

/// The three conditions that make a formula a boundary condition of a
/// specification, each decided at a fixed bound.
struct BoundaryConditionReport {
    /// Dom, BC and all goals admit no lasso.
    bool inconsistency = false;
    /// Entry i: dropping goal i makes Dom, BC and the remaining goals satisfiable.
    std::vector<bool> minimality;
    /// BC is not equivalent to the negated goal conjunction.
    bool non_triviality = false;
    bool holds = false;
};

/// Values of the four maximizing objectives of a candidate resolution.
struct FitnessVector {
    double consistency = 0.0;  ///< 0, 0.5 or 1
    double resolved = 0.0;     ///< fraction of boundary conditions resolved
    double syntactic = 0.0;
    double semantic = 0.0;

    friend auto operator==(FitnessVector const&, FitnessVector const&) -> bool = default;
};

/// Consistency and resolution are both maximal.
[[nodiscard]] inline auto is_valid(FitnessVector const& v) noexcept -> bool
{
    return v.consistency == 1.0 && v.resolved == 1.0;
}

[[nodiscard]] auto check_bc(Specification const& spec, Formula const& bc, std::size_t k, Limits const& limits = {})
    -> BoundaryConditionReport;

/// 1 if Dom && G is satisfiable, 0.5 if only G is, 0 otherwise. A check that
/// runs out of budget counts as unsatisfiable.
[[nodiscard]] auto consistency(Specification const& spec, std::size_t k, Limits const& limits = {}) -> double;

/// Fraction of `bcs` for which Dom && BC && G is satisfiable. A check that
/// runs out of budget counts as unresolved.
[[nodiscard]] auto resolved_ratio(Specification const& spec, std::vector<Formula> const& bcs, std::size_t k,
    Limits const& limits = {}) -> double;

/// Edit distance between two token sequences (unit insert/delete/substitute).
[[nodiscard]] auto token_levenshtein(TokenStream const& a, TokenStream const& b) -> std::size_t;

/// Concatenated token streams of all goals.
[[nodiscard]] auto goal_tokens(Specification const& spec) -> TokenStream;

/// (maxLength - distance) / maxLength over the goal token streams.
[[nodiscard]] auto syntactic_similarity(Specification const& orig, Specification const& cand) -> double;

/// #(S && C) / #(S || C) over bases of length k, S and C being the full
/// conjunctions of each specification; 0 when the union is empty.
[[nodiscard]] auto semantic_similarity(Specification const& orig, Specification const& cand, std::size_t k,
    Limits const& limits = {}) -> double;

[[nodiscard]] auto is_valid_resolution(Specification const& orig, Specification const& cand,
    std::vector<Formula> const& bcs, std::size_t k, Limits const& limits = {}) -> bool;

/// All four objectives computed one at a time through the operations above.
[[nodiscard]] auto evaluate_fitness(Specification const& orig, Specification const& cand,
    std::vector<Formula> const& bcs, std::size_t k, Limits const& limits = {}) -> FitnessVector;

/// Whether the two formulas have the same lassos of base length <= k.
[[nodiscard]] auto bounded_equivalent(Formula const& a, Formula const& b, Alphabet const& alphabet, std::size_t k,
    Limits const& limits = {}) -> bool;

/// Memoizing fitness evaluator used by the search. Domain, original
/// specification and boundary conditions are tabulated once per problem
/// (one loop mask per base of length k); every distinct goal formula is
/// tabulated once and shared by all candidates containing it. A candidate
/// then costs one pass over the bases, which yields every satisfiability
/// check and both base counts together. Agrees with `evaluate_fitness`.
class FitnessEvaluator {
public:
    FitnessEvaluator(Specification original, std::vector<Formula> bcs, std::size_t k, Limits limits = {});

    [[nodiscard]] auto evaluate(Specification const& cand) -> FitnessVector;

    [[nodiscard]] auto original() const noexcept -> Specification const& { return original_; }
    [[nodiscard]] auto bcs() const noexcept -> std::vector<Formula> const& { return bcs_; }
    [[nodiscard]] auto bound() const noexcept -> std::size_t { return k_; }
    /// Number of candidates actually computed (memo misses).
    [[nodiscard]] auto computed() const noexcept -> std::size_t { return computed_; }

private:
    struct GoalsHash {
        auto operator()(std::vector<Formula> const& goals) const noexcept -> std::size_t;
    };

    auto goal_table(Formula const& goal) -> std::shared_ptr<MaskTable const>;
    auto compute(Specification const& cand) -> FitnessVector;

    Specification original_;
    std::vector<Formula> bcs_;
    std::size_t k_;
    Limits limits_;
    TokenStream original_tokens_;
    MaskTable dom_;
    MaskTable original_conj_;
    std::vector<MaskTable> bc_tables_;
    std::unordered_map<Formula, std::shared_ptr<MaskTable const>, FormulaHash> goal_tables_;
    std::unordered_map<std::vector<Formula>, FitnessVector, GoalsHash> memo_;
    std::size_t computed_ = 0;
};

}  // namespace gcr
