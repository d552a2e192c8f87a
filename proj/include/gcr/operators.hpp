#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "gcr/alphabet.hpp"
#include "gcr/formula.hpp"
#include "gcr/random.hpp"
#include "gcr/specification.hpp"

namespace gcr {

/// Syntactic mutation rules. Base cases rewrite constants (1) and atoms
/// (2); 3x act on a unary node, 4x on a binary node; 5 wraps any node in a
/// unary operator and 6 replaces it by a constant or an atom.
enum class MutationRule : std::uint8_t {
    R1,
    R2,
    R3a,  ///< swap the unary operator
    R3b,  ///< drop the unary operator
    R3c,  ///< mutate the operand
    R3d,  ///< q o phi with q an atom, o in {U, W, &&, ||}
    R4a,  ///< swap the binary operator for one of {||, &&, U, R, W}
    R4b,  ///< keep one operand
    R4c,  ///< mutate the left operand
    R4d,  ///< mutate the right operand
    R5,
    R6,
};

inline constexpr std::array all_mutation_rules{
    MutationRule::R1, MutationRule::R2, MutationRule::R3a, MutationRule::R3b,
    MutationRule::R3c, MutationRule::R3d, MutationRule::R4a, MutationRule::R4b,
    MutationRule::R4c, MutationRule::R4d, MutationRule::R5, MutationRule::R6,
};

[[nodiscard]] auto label(MutationRule rule) -> std::string_view;

struct Mutation {
    Formula result;
    /// Rule applied at the selected node.
    MutationRule rule;
    /// `rule` followed by the rules of any nested mutation (3c, 4c, 4d).
    std::vector<MutationRule> chain;
};

/// Rules that apply at the root of `node`.
[[nodiscard]] auto applicable_rules(Formula const& node, Alphabet const& alphabet) -> std::vector<MutationRule>;

/// Applies `rule` at the root of `node`; sub-choices are uniform.
[[nodiscard]] auto apply_rule(Formula const& node, MutationRule rule, Alphabet const& alphabet, RandomSource& rng)
    -> Mutation;

/// Picks a node of `f` uniformly, then a rule applicable there uniformly,
/// and returns `f` with that node rewritten.
[[nodiscard]] auto mutate_formula(Formula const& f, Alphabet const& alphabet, RandomSource& rng) -> Mutation;

/// `f` with the node at `alpha` replaced by `beta` (when `op` is empty) or
/// by `alpha op beta`.
[[nodiscard]] auto combine_at(Formula const& f, Path const& alpha, Formula const& beta, std::optional<Op> op = std::nullopt)
    -> Formula;

/// Selects subformulas alpha of `f` and beta of `g` uniformly; with
/// probability 1/2 substitutes beta for alpha, otherwise substitutes
/// `alpha o beta` with o uniform in {||, &&, U, R, W}.
[[nodiscard]] auto combine_formulas(Formula const& f, Formula const& g, RandomSource& rng) -> Formula;

/// Mutates one uniformly chosen goal.
[[nodiscard]] auto mutate_spec(Specification const& cand, RandomSource& rng) -> Specification;

/// `a` with one uniformly chosen goal combined with a uniformly chosen goal of `b`.
[[nodiscard]] auto crossover_specs(Specification const& a, Specification const& b, RandomSource& rng) -> Specification;

}  // namespace gcr
