#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcr {

/// Node kinds of the LTL abstract syntax. Derived operators are kept as
/// first-class kinds; nothing is desugared.
enum class Op : std::uint8_t {
    True,
    False,
    Atom,
    Not,
    Next,
    Eventually,
    Always,
    And,
    Or,
    Implies,
    Iff,
    Until,
    WeakUntil,
    Release,
};

[[nodiscard]] constexpr auto arity(Op op) noexcept -> std::size_t
{
    switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
        return 0;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Always:
        return 1;
    default:
        return 2;
    }
}

[[nodiscard]] constexpr auto is_unary(Op op) noexcept -> bool { return arity(op) == 1; }
[[nodiscard]] constexpr auto is_binary(Op op) noexcept -> bool { return arity(op) == 2; }
[[nodiscard]] constexpr auto is_constant(Op op) noexcept -> bool { return op == Op::True || op == Op::False; }

/// Concrete-syntax symbol of an operator ("!", "X", "&&", "U", ...).
[[nodiscard]] auto symbol(Op op) -> std::string_view;

struct Node;

/// Immutable LTL formula with value semantics. Subtrees may be shared
/// internally but nothing can be mutated through the public interface, so
/// sharing is never observable.
class Formula {
public:
    Formula();  // the constant `true`

    static auto constant(bool value) -> Formula;
    static auto atom(std::string name) -> Formula;
    static auto unary(Op op, Formula child) -> Formula;
    static auto binary(Op op, Formula lhs, Formula rhs) -> Formula;

    [[nodiscard]] auto op() const noexcept -> Op;
    /// Atom name; empty for every other kind.
    [[nodiscard]] auto name() const noexcept -> std::string const&;
    [[nodiscard]] auto arity() const noexcept -> std::size_t { return gcr::arity(op()); }
    [[nodiscard]] auto child(std::size_t i) const -> Formula const&;

    /// Number of nodes in the tree.
    [[nodiscard]] auto size() const noexcept -> std::size_t;
    [[nodiscard]] auto depth() const noexcept -> std::size_t;
    [[nodiscard]] auto hash() const noexcept -> std::size_t;

    friend auto operator==(Formula const& a, Formula const& b) noexcept -> bool;

private:
    explicit Formula(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
    std::shared_ptr<Node const> node_;
};

struct Node {
    Op op;
    std::string name;
    std::vector<Formula> children;
    std::size_t size;
    std::size_t depth;
    std::size_t hash;
};

struct FormulaHash {
    auto operator()(Formula const& f) const noexcept -> std::size_t { return f.hash(); }
};

/// Address of a subformula: child indices from the root (empty = root).
struct Path {
    std::vector<std::uint8_t> steps;

    friend auto operator==(Path const&, Path const&) -> bool = default;
};

class InvalidPathError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pre-order list of every node together with its address.
[[nodiscard]] auto subformulas(Formula const& f) -> std::vector<std::pair<Path, Formula>>;

[[nodiscard]] auto at(Formula const& f, Path const& path) -> Formula const&;

/// Copy of `f` with the node at `path` replaced by `g`. Unchanged subtrees
/// are shared with `f`; `f` itself is untouched.
[[nodiscard]] auto replace_at(Formula const& f, Path const& path, Formula const& g) -> Formula;

/// Atom names occurring in `f`.
[[nodiscard]] auto atoms(Formula const& f) -> std::set<std::string>;

/// Whether `needle` occurs as a subtree of `haystack`.
[[nodiscard]] auto contains_subformula(Formula const& haystack, Formula const& needle) -> bool;

/// Conjunction of all formulas, left-nested; `true` for an empty list.
[[nodiscard]] auto conjunction(std::vector<Formula> const& fs) -> Formula;

namespace ltl {
    inline auto tt() -> Formula { return Formula::constant(true); }
    inline auto ff() -> Formula { return Formula::constant(false); }
    inline auto atom(std::string name) -> Formula { return Formula::atom(std::move(name)); }
    inline auto neg(Formula f) -> Formula { return Formula::unary(Op::Not, std::move(f)); }
    inline auto next(Formula f) -> Formula { return Formula::unary(Op::Next, std::move(f)); }
    inline auto eventually(Formula f) -> Formula { return Formula::unary(Op::Eventually, std::move(f)); }
    inline auto always(Formula f) -> Formula { return Formula::unary(Op::Always, std::move(f)); }
    inline auto conj(Formula a, Formula b) -> Formula { return Formula::binary(Op::And, std::move(a), std::move(b)); }
    inline auto disj(Formula a, Formula b) -> Formula { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
    inline auto implies(Formula a, Formula b) -> Formula { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
    inline auto iff(Formula a, Formula b) -> Formula { return Formula::binary(Op::Iff, std::move(a), std::move(b)); }
    inline auto until(Formula a, Formula b) -> Formula { return Formula::binary(Op::Until, std::move(a), std::move(b)); }
    inline auto weak_until(Formula a, Formula b) -> Formula { return Formula::binary(Op::WeakUntil, std::move(a), std::move(b)); }
    inline auto release(Formula a, Formula b) -> Formula { return Formula::binary(Op::Release, std::move(a), std::move(b)); }
}  // namespace ltl

}  // namespace gcr
