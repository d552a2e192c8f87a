#include "gcr/operators.hpp"

#include <stdexcept>

#include "gcr/semantics.hpp"

namespace gcr {

namespace {

constexpr std::array unary_ops{ Op::Not, Op::Next, Op::Eventually, Op::Always };
constexpr std::array binary_ops{ Op::Or, Op::And, Op::Until, Op::Release, Op::WeakUntil };
constexpr std::array augment_ops{ Op::Until, Op::WeakUntil, Op::And, Op::Or };

template <typename Range>
auto pick(Range const& r, RandomSource& rng) -> decltype(auto)
{
    return r[rng.index(r.size())];
}

auto pick_atom(Alphabet const& alphabet, RandomSource& rng) -> Formula
{
    return ltl::atom(alphabet.name(rng.index(alphabet.size())));
}

/// Candidates for rule 6 at `node`: constants and atoms, minus `node`.
auto leaf_replacements(Formula const& node, Alphabet const& alphabet) -> std::vector<Formula>
{
    std::vector<Formula> out;
    for (auto const& c : { ltl::tt(), ltl::ff() }) {
        if (!(c == node)) {
            out.push_back(c);
        }
    }
    for (auto const& n : alphabet.names()) {
        if (!(node.op() == Op::Atom && node.name() == n)) {
            out.push_back(ltl::atom(n));
        }
    }
    return out;
}

}  // namespace

auto label(MutationRule rule) -> std::string_view
{
    switch (rule) {
    case MutationRule::R1: return "1";
    case MutationRule::R2: return "2";
    case MutationRule::R3a: return "3a";
    case MutationRule::R3b: return "3b";
    case MutationRule::R3c: return "3c";
    case MutationRule::R3d: return "3d";
    case MutationRule::R4a: return "4a";
    case MutationRule::R4b: return "4b";
    case MutationRule::R4c: return "4c";
    case MutationRule::R4d: return "4d";
    case MutationRule::R5: return "5";
    case MutationRule::R6: return "6";
    }
    return "?";
}

auto applicable_rules(Formula const& node, Alphabet const& alphabet) -> std::vector<MutationRule>
{
    std::vector<MutationRule> rules;
    switch (node.arity()) {
    case 0:
        if (is_constant(node.op())) {
            rules.push_back(MutationRule::R1);
        } else if (alphabet.size() >= 2) {
            rules.push_back(MutationRule::R2);
        }
        break;
    case 1:
        rules.insert(rules.end(), { MutationRule::R3a, MutationRule::R3b, MutationRule::R3c });
        if (!alphabet.empty()) {
            rules.push_back(MutationRule::R3d);
        }
        break;
    default:
        rules.insert(rules.end(), { MutationRule::R4a, MutationRule::R4b, MutationRule::R4c, MutationRule::R4d });
        break;
    }
    rules.push_back(MutationRule::R5);
    if (!leaf_replacements(node, alphabet).empty()) {
        rules.push_back(MutationRule::R6);
    }
    return rules;
}

auto apply_rule(Formula const& node, MutationRule rule, Alphabet const& alphabet, RandomSource& rng) -> Mutation
{
    Mutation m{ node, rule, { rule } };
    auto nested = [&](Formula const& child) {
        auto inner = mutate_formula(child, alphabet, rng);
        m.chain.insert(m.chain.end(), inner.chain.begin(), inner.chain.end());
        return inner.result;
    };
    switch (rule) {
    case MutationRule::R1:
        m.result = Formula::constant(node.op() != Op::True);
        break;
    case MutationRule::R2: {
        std::vector<std::string> others;
        for (auto const& n : alphabet.names()) {
            if (n != node.name()) {
                others.push_back(n);
            }
        }
        m.result = ltl::atom(pick(others, rng));
        break;
    }
    case MutationRule::R3a: {
        std::vector<Op> others;
        for (auto op : unary_ops) {
            if (op != node.op()) {
                others.push_back(op);
            }
        }
        m.result = Formula::unary(pick(others, rng), node.child(0));
        break;
    }
    case MutationRule::R3b:
        m.result = node.child(0);
        break;
    case MutationRule::R3c:
        m.result = Formula::unary(node.op(), nested(node.child(0)));
        break;
    case MutationRule::R3d: {
        auto q = pick_atom(alphabet, rng);
        m.result = Formula::binary(pick(augment_ops, rng), std::move(q), node);
        break;
    }
    case MutationRule::R4a: {
        std::vector<Op> others;
        for (auto op : binary_ops) {
            if (op != node.op()) {
                others.push_back(op);
            }
        }
        m.result = Formula::binary(pick(others, rng), node.child(0), node.child(1));
        break;
    }
    case MutationRule::R4b:
        m.result = node.child(rng.index(2));
        break;
    case MutationRule::R4c:
        m.result = Formula::binary(node.op(), nested(node.child(0)), node.child(1));
        break;
    case MutationRule::R4d:
        m.result = Formula::binary(node.op(), node.child(0), nested(node.child(1)));
        break;
    case MutationRule::R5:
        m.result = Formula::unary(pick(unary_ops, rng), node);
        break;
    case MutationRule::R6:
        m.result = pick(leaf_replacements(node, alphabet), rng);
        break;
    }
    return m;
}

auto mutate_formula(Formula const& f, Alphabet const& alphabet, RandomSource& rng) -> Mutation
{
    auto const nodes = subformulas(f);
    auto const& [path, node] = nodes[rng.index(nodes.size())];
    auto const rules = applicable_rules(node, alphabet);
    auto m = apply_rule(node, pick(rules, rng), alphabet, rng);
    m.result = replace_at(f, path, m.result);
    return m;
}

auto combine_at(Formula const& f, Path const& alpha, Formula const& beta, std::optional<Op> op) -> Formula
{
    if (!op) {
        return replace_at(f, alpha, beta);
    }
    return replace_at(f, alpha, Formula::binary(*op, at(f, alpha), beta));
}

auto combine_formulas(Formula const& f, Formula const& g, RandomSource& rng) -> Formula
{
    auto const fs = subformulas(f);
    auto const gs = subformulas(g);
    auto const& alpha = fs[rng.index(fs.size())].first;
    auto const& beta = gs[rng.index(gs.size())].second;
    if (rng.bernoulli(0.5)) {
        return combine_at(f, alpha, beta);
    }
    return combine_at(f, alpha, beta, pick(binary_ops, rng));
}

auto mutate_spec(Specification const& cand, RandomSource& rng) -> Specification
{
    if (cand.goals.empty()) {
        throw std::invalid_argument("cannot mutate a specification without goals");
    }
    auto goals = cand.goals;
    auto const i = rng.index(goals.size());
    goals[i] = mutate_formula(goals[i], cand.alphabet, rng).result;
    return cand.with_goals(std::move(goals));
}

auto crossover_specs(Specification const& a, Specification const& b, RandomSource& rng) -> Specification
{
    if (!(a.alphabet == b.alphabet)) {
        throw AlphabetMismatchError("crossover parents must share an alphabet");
    }
    if (a.goals.empty() || b.goals.empty()) {
        throw std::invalid_argument("crossover parents need goals");
    }
    auto goals = a.goals;
    auto const i = rng.index(goals.size());
    auto const j = rng.index(b.goals.size());
    goals[i] = combine_formulas(a.goals[i], b.goals[j], rng);
    return a.with_goals(std::move(goals));
}

}  // namespace gcr
