#include "gcr/formula.hpp"

#include <algorithm>
#include <functional>

namespace gcr {

namespace {

auto combine_hash(std::size_t seed, std::size_t v) -> std::size_t
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

auto make_node(Op op, std::string name, Formula const* lhs, Formula const* rhs) -> std::shared_ptr<Node const>
{
    auto node = std::make_shared<Node>();
    node->op = op;
    node->name = std::move(name);
    node->size = 1;
    node->depth = 1;
    node->hash = combine_hash(std::hash<int>{}(static_cast<int>(op)), std::hash<std::string>{}(node->name));
    for (auto const* c : { lhs, rhs }) {
        if (c == nullptr) {
            continue;
        }
        node->children.push_back(*c);
        node->size += c->size();
        node->depth = std::max(node->depth, c->depth() + 1);
        node->hash = combine_hash(node->hash, c->hash());
    }
    return node;
}

}  // namespace

auto symbol(Op op) -> std::string_view
{
    switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "";
    case Op::Not: return "!";
    case Op::Next: return "X";
    case Op::Eventually: return "F";
    case Op::Always: return "G";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return "R";
    }
    return "?";
}

namespace {
    auto true_node() -> std::shared_ptr<Node const> const&
    {
        static auto const node = make_node(Op::True, {}, nullptr, nullptr);
        return node;
    }
    auto false_node() -> std::shared_ptr<Node const> const&
    {
        static auto const node = make_node(Op::False, {}, nullptr, nullptr);
        return node;
    }
}  // namespace

Formula::Formula() : node_(true_node()) {}

auto Formula::constant(bool value) -> Formula
{
    return Formula(value ? true_node() : false_node());
}

auto Formula::atom(std::string name) -> Formula
{
    if (name.empty()) {
        throw std::invalid_argument("atom name must be nonempty");
    }
    return Formula(make_node(Op::Atom, std::move(name), nullptr, nullptr));
}

auto Formula::unary(Op op, Formula child) -> Formula
{
    if (!is_unary(op)) {
        throw std::invalid_argument("not a unary operator");
    }
    return Formula(make_node(op, {}, &child, nullptr));
}

auto Formula::binary(Op op, Formula lhs, Formula rhs) -> Formula
{
    if (!is_binary(op)) {
        throw std::invalid_argument("not a binary operator");
    }
    return Formula(make_node(op, {}, &lhs, &rhs));
}

auto Formula::op() const noexcept -> Op { return node_->op; }
auto Formula::name() const noexcept -> std::string const& { return node_->name; }
auto Formula::size() const noexcept -> std::size_t { return node_->size; }
auto Formula::depth() const noexcept -> std::size_t { return node_->depth; }
auto Formula::hash() const noexcept -> std::size_t { return node_->hash; }

auto Formula::child(std::size_t i) const -> Formula const&
{
    if (i >= arity()) {
        throw InvalidPathError("child index out of range");
    }
    return node_->children[i];
}

auto operator==(Formula const& a, Formula const& b) noexcept -> bool
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op() || a.name() != b.name()) {
        return false;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.node_->children[i] == b.node_->children[i])) {
            return false;
        }
    }
    return true;
}

namespace {
    void collect(Formula const& f, Path& path, std::vector<std::pair<Path, Formula>>& out)
    {
        out.emplace_back(path, f);
        for (std::size_t i = 0; i < f.arity(); ++i) {
            path.steps.push_back(static_cast<std::uint8_t>(i));
            collect(f.child(i), path, out);
            path.steps.pop_back();
        }
    }

    auto replace_rec(Formula const& f, Path const& path, std::size_t pos, Formula const& g) -> Formula
    {
        if (pos == path.steps.size()) {
            return g;
        }
        auto const idx = path.steps[pos];
        if (idx >= f.arity()) {
            throw InvalidPathError("path does not address a node of the formula");
        }
        auto replaced = replace_rec(f.child(idx), path, pos + 1, g);
        if (f.arity() == 1) {
            return Formula::unary(f.op(), std::move(replaced));
        }
        return idx == 0 ? Formula::binary(f.op(), std::move(replaced), f.child(1))
                        : Formula::binary(f.op(), f.child(0), std::move(replaced));
    }

    void collect_atoms(Formula const& f, std::set<std::string>& out)
    {
        if (f.op() == Op::Atom) {
            out.insert(f.name());
        }
        for (std::size_t i = 0; i < f.arity(); ++i) {
            collect_atoms(f.child(i), out);
        }
    }
}  // namespace

auto subformulas(Formula const& f) -> std::vector<std::pair<Path, Formula>>
{
    std::vector<std::pair<Path, Formula>> out;
    out.reserve(f.size());
    Path path;
    collect(f, path, out);
    return out;
}

auto at(Formula const& f, Path const& path) -> Formula const&
{
    Formula const* cur = &f;
    for (auto step : path.steps) {
        if (step >= cur->arity()) {
            throw InvalidPathError("path does not address a node of the formula");
        }
        cur = &cur->child(step);
    }
    return *cur;
}

auto replace_at(Formula const& f, Path const& path, Formula const& g) -> Formula
{
    return replace_rec(f, path, 0, g);
}

auto atoms(Formula const& f) -> std::set<std::string>
{
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

auto contains_subformula(Formula const& haystack, Formula const& needle) -> bool
{
    if (haystack.size() < needle.size()) {
        return false;
    }
    if (haystack == needle) {
        return true;
    }
    for (std::size_t i = 0; i < haystack.arity(); ++i) {
        if (contains_subformula(haystack.child(i), needle)) {
            return true;
        }
    }
    return false;
}

auto conjunction(std::vector<Formula> const& fs) -> Formula
{
    if (fs.empty()) {
        return ltl::tt();
    }
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = ltl::conj(acc, fs[i]);
    }
    return acc;
}

}  // namespace gcr
