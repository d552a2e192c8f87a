#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcr/alphabet.hpp"
#include "gcr/formula.hpp"

namespace gcr {

/// Propositional valuation: bit i set iff atom i of the alphabet holds.
using State = std::uint32_t;

/// Bit l set iff the lasso closing its loop at index l satisfies the formula.
using LoopMask = std::uint32_t;

/// Largest supported base length.
inline constexpr std::size_t max_bound = 16;

/// Infinite trace s_0 ... s_{loop-1} (s_loop ... s_{k-1})^omega.
struct LassoTrace {
    std::vector<State> base;
    std::size_t loop_start = 0;

    friend auto operator==(LassoTrace const&, LassoTrace const&) -> bool = default;
};

class AlphabetMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumeration budget shared by every bounded check.
struct Limits {
    std::uint64_t max_bases = std::uint64_t{ 1 } << 26;
    std::chrono::milliseconds timeout = std::chrono::seconds(300);
};

/// Outcome of a bounded satisfiability query.
class BoundedVerdict {
public:
    static auto sat(LassoTrace witness) -> BoundedVerdict { return BoundedVerdict(std::move(witness), 0); }
    static auto unsat(std::size_t bound) -> BoundedVerdict { return BoundedVerdict(std::nullopt, bound); }

    [[nodiscard]] auto is_sat() const noexcept -> bool { return witness_.has_value(); }
    /// Only meaningful when `is_sat()`.
    [[nodiscard]] auto witness() const -> LassoTrace const& { return witness_.value(); }
    /// Bound searched exhaustively; only meaningful when unsatisfiable.
    [[nodiscard]] auto bound() const noexcept -> std::size_t { return bound_; }

private:
    BoundedVerdict(std::optional<LassoTrace> w, std::size_t k) : witness_(std::move(w)), bound_(k) {}
    std::optional<LassoTrace> witness_;
    std::size_t bound_;
};

/// Formula flattened into post-order over a fixed alphabet, evaluated on
/// every loop start of a base at once. Per-position truth values are bit
/// vectors; temporal operators are solved as fixpoints of the successor
/// map, which wraps from the last base position back to the loop start.
class CompiledFormula {
public:
    CompiledFormula(Formula const& f, Alphabet const& alphabet);

    /// `atom_positions[a]` holds bit i iff atom a is true in state i of a
    /// base of length `k`.
    [[nodiscard]] auto loop_mask(std::span<std::uint32_t const> atom_positions, std::size_t k) const -> LoopMask;

    /// Truth at position 0 of one particular lasso.
    [[nodiscard]] auto holds(std::span<std::uint32_t const> atom_positions, std::size_t k, std::size_t loop_start) const -> bool;

private:
    struct Instr {
        Op op;
        std::uint32_t atom = 0;
        std::uint32_t lhs = 0;
        std::uint32_t rhs = 0;
        bool temporal = false;
    };

    auto compile(Formula const& f, Alphabet const& alphabet) -> std::uint32_t;
    void eval_static(std::span<std::uint32_t const> atoms, std::uint32_t full, std::uint32_t* values) const;
    void eval_loop(std::uint32_t* values, std::size_t k, std::size_t loop) const;

    std::vector<Instr> code_;
    bool any_temporal_ = false;
};

/// Bit i of entry a is set iff atom a holds in `base[i]`.
[[nodiscard]] auto atom_positions(std::span<State const> base, std::size_t alphabet_size) -> std::vector<std::uint32_t>;

/// Truth of `f` at position 0 of the lasso `t`.
[[nodiscard]] auto eval_lasso(Formula const& f, LassoTrace const& t, Alphabet const& alphabet) -> bool;

/// Decides satisfiability over lassos with base length at most `k`; the
/// witness has the shortest satisfying base length.
[[nodiscard]] auto sat_bounded(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits = {}) -> BoundedVerdict;

/// Same, over the atoms occurring in `f`.
[[nodiscard]] auto sat_bounded(Formula const& f, std::size_t k, Limits const& limits = {}) -> BoundedVerdict;

/// Exact number of bases of length exactly `k` over `alphabet` for which
/// some loop start yields a lasso satisfying `f`.
[[nodiscard]] auto count_bases(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits = {}) -> std::uint64_t;

/// Loop masks of every base of one length; fits because k <= max_bound.
using MaskTable = std::vector<std::uint16_t>;

/// Loop mask of `f` for every base of length `k` over `alphabet`, indexed by
/// the base number (state j occupies bits [j*|AP|, (j+1)*|AP|)).
[[nodiscard]] auto loop_mask_table(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits = {}) -> MaskTable;

/// Number of bases of length `k` over `alphabet`; throws ResourceLimitError
/// when above `limits.max_bases`.
[[nodiscard]] auto base_count(std::size_t alphabet_size, std::size_t k, Limits const& limits) -> std::uint64_t;

/// Decodes base number `index` into its states.
[[nodiscard]] auto decode_base(std::uint64_t index, std::size_t alphabet_size, std::size_t k) -> std::vector<State>;

[[nodiscard]] auto trace_to_json(LassoTrace const& t, Alphabet const& alphabet) -> nlohmann::ordered_json;
[[nodiscard]] auto trace_from_json(nlohmann::json const& j, Alphabet const& alphabet) -> LassoTrace;

}  // namespace gcr
