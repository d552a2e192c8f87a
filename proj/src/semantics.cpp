#include "gcr/semantics.hpp"

#include <bit>

namespace gcr {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget) : end_(Clock::now() + budget) {}

    void check(std::uint64_t step)
    {
        if ((step & 0x3ff) == 0 && Clock::now() > end_) {
            throw ResourceLimitError("bounded enumeration exceeded its time budget");
        }
    }

private:
    Clock::time_point end_;
};

void check_bound(std::size_t k)
{
    if (k < 1 || k > max_bound) {
        throw std::invalid_argument("bound must be in [1, " + std::to_string(max_bound) + "]");
    }
}

void check_atoms(Formula const& f, Alphabet const& alphabet)
{
    for (auto const& a : atoms(f)) {
        if (!alphabet.contains(a)) {
            throw AlphabetMismatchError("atom '" + a + "' is not in the alphabet");
        }
    }
}

/// Atoms of `f` in the order they appear in `alphabet`.
auto restrict_alphabet(Formula const& f, Alphabet const& alphabet) -> Alphabet
{
    auto const used = atoms(f);
    std::vector<std::string> names;
    for (auto const& n : alphabet.names()) {
        if (used.contains(n)) {
            names.push_back(n);
        }
    }
    return Alphabet(std::move(names));
}

auto lift_state(State local, Alphabet const& from, Alphabet const& to) -> State
{
    State out = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if ((local >> i) & 1U) {
            out |= State{ 1 } << *to.index_of(from.name(i));
        }
    }
    return out;
}

/// Atom position masks for base number `index`.
void decode_positions(std::uint64_t index, std::size_t n, std::size_t k, std::uint32_t* out)
{
    for (std::size_t a = 0; a < n; ++a) {
        out[a] = 0;
    }
    for (std::size_t j = 0; j < k; ++j) {
        auto state = static_cast<std::uint32_t>(index >> (j * n));
        for (std::size_t a = 0; a < n; ++a) {
            out[a] |= ((state >> a) & 1U) << j;
        }
    }
}

}  // namespace

CompiledFormula::CompiledFormula(Formula const& f, Alphabet const& alphabet)
{
    code_.reserve(f.size());
    compile(f, alphabet);
    any_temporal_ = code_.back().temporal;
}

auto CompiledFormula::compile(Formula const& f, Alphabet const& alphabet) -> std::uint32_t
{
    Instr ins{ f.op() };
    switch (f.arity()) {
    case 0:
        if (f.op() == Op::Atom) {
            auto idx = alphabet.index_of(f.name());
            if (!idx) {
                throw AlphabetMismatchError("atom '" + f.name() + "' is not in the alphabet");
            }
            ins.atom = static_cast<std::uint32_t>(*idx);
        }
        break;
    case 1:
        ins.lhs = compile(f.child(0), alphabet);
        ins.temporal = f.op() != Op::Not || code_[ins.lhs].temporal;
        break;
    default:
        ins.lhs = compile(f.child(0), alphabet);
        ins.rhs = compile(f.child(1), alphabet);
        ins.temporal = code_[ins.lhs].temporal || code_[ins.rhs].temporal || f.op() == Op::Until
            || f.op() == Op::WeakUntil || f.op() == Op::Release;
        break;
    }
    code_.push_back(ins);
    return static_cast<std::uint32_t>(code_.size() - 1);
}

void CompiledFormula::eval_static(std::span<std::uint32_t const> atoms, std::uint32_t full, std::uint32_t* v) const
{
    for (std::size_t i = 0; i < code_.size(); ++i) {
        auto const& in = code_[i];
        if (in.temporal) {
            continue;
        }
        switch (in.op) {
        case Op::True: v[i] = full; break;
        case Op::False: v[i] = 0; break;
        case Op::Atom: v[i] = atoms[in.atom]; break;
        case Op::Not: v[i] = ~v[in.lhs] & full; break;
        case Op::And: v[i] = v[in.lhs] & v[in.rhs]; break;
        case Op::Or: v[i] = v[in.lhs] | v[in.rhs]; break;
        case Op::Implies: v[i] = (~v[in.lhs] | v[in.rhs]) & full; break;
        case Op::Iff: v[i] = ~(v[in.lhs] ^ v[in.rhs]) & full; break;
        default: break;
        }
    }
}

void CompiledFormula::eval_loop(std::uint32_t* v, std::size_t k, std::size_t loop) const
{
    std::uint32_t const full = (std::uint32_t{ 1 } << k) - 1;
    std::uint32_t const loop_part = full & ~((std::uint32_t{ 1 } << loop) - 1);
    auto const next = [&](std::uint32_t x) {
        return ((x >> 1) | (((x >> loop) & 1U) << (k - 1))) & full;
    };
    // Positions from which some position in `x` is reachable.
    auto const reach = [&](std::uint32_t x) -> std::uint32_t {
        if ((x & loop_part) != 0) {
            return full;
        }
        if (x == 0) {
            return 0;
        }
        return (std::uint32_t{ 2 } << (std::bit_width(x) - 1)) - 1;
    };
    for (std::size_t i = 0; i < code_.size(); ++i) {
        auto const& in = code_[i];
        if (!in.temporal) {
            continue;
        }
        auto const a = v[in.lhs];
        auto const b = v[in.rhs];
        switch (in.op) {
        case Op::Not: v[i] = ~a & full; break;
        case Op::And: v[i] = a & b; break;
        case Op::Or: v[i] = a | b; break;
        case Op::Implies: v[i] = (~a | b) & full; break;
        case Op::Iff: v[i] = ~(a ^ b) & full; break;
        case Op::Next: v[i] = next(a); break;
        case Op::Eventually: v[i] = reach(a); break;
        case Op::Always: v[i] = ~reach(~a & full) & full; break;
        case Op::Until: {
            std::uint32_t r = b;
            for (;;) {
                auto const nr = b | (a & next(r));
                if (nr == r) {
                    break;
                }
                r = nr;
            }
            v[i] = r;
            break;
        }
        case Op::WeakUntil:
        case Op::Release: {
            // Greatest fixpoints: W is r = b | (a & Xr), R is r = b & (a | Xr).
            std::uint32_t r = full;
            for (;;) {
                auto const nr = in.op == Op::WeakUntil ? (b | (a & next(r))) : (b & (a | next(r)));
                if (nr == r) {
                    break;
                }
                r = nr;
            }
            v[i] = r;
            break;
        }
        default: break;
        }
    }
}

auto CompiledFormula::loop_mask(std::span<std::uint32_t const> atom_positions, std::size_t k) const -> LoopMask
{
    thread_local std::vector<std::uint32_t> values;
    values.resize(code_.size());
    std::uint32_t const full = (std::uint32_t{ 1 } << k) - 1;
    eval_static(atom_positions, full, values.data());
    if (!any_temporal_) {
        return (values.back() & 1U) != 0 ? full : 0;
    }
    LoopMask mask = 0;
    for (std::size_t loop = 0; loop < k; ++loop) {
        eval_loop(values.data(), k, loop);
        mask |= (values.back() & 1U) << loop;
    }
    return mask;
}

auto CompiledFormula::holds(std::span<std::uint32_t const> atom_positions, std::size_t k, std::size_t loop_start) const -> bool
{
    thread_local std::vector<std::uint32_t> values;
    values.resize(code_.size());
    std::uint32_t const full = (std::uint32_t{ 1 } << k) - 1;
    eval_static(atom_positions, full, values.data());
    if (any_temporal_) {
        eval_loop(values.data(), k, loop_start);
    }
    return (values.back() & 1U) != 0;
}

auto atom_positions(std::span<State const> base, std::size_t alphabet_size) -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> out(alphabet_size, 0);
    for (std::size_t j = 0; j < base.size(); ++j) {
        for (std::size_t a = 0; a < alphabet_size; ++a) {
            out[a] |= ((base[j] >> a) & 1U) << j;
        }
    }
    return out;
}

auto eval_lasso(Formula const& f, LassoTrace const& t, Alphabet const& alphabet) -> bool
{
    if (t.base.empty() || t.base.size() > max_bound || t.loop_start >= t.base.size()) {
        throw std::invalid_argument("lasso needs a nonempty base of at most " + std::to_string(max_bound)
            + " states and a loop start inside it");
    }
    State const allowed = alphabet.size() >= 32 ? ~State{ 0 } : (State{ 1 } << alphabet.size()) - 1;
    for (auto s : t.base) {
        if ((s & ~allowed) != 0) {
            throw AlphabetMismatchError("trace state uses atoms outside the alphabet");
        }
    }
    CompiledFormula const compiled(f, alphabet);
    auto const positions = atom_positions(t.base, alphabet.size());
    return compiled.holds(positions, t.base.size(), t.loop_start);
}

auto base_count(std::size_t alphabet_size, std::size_t k, Limits const& limits) -> std::uint64_t
{
    auto const bits = alphabet_size * k;
    if (bits >= 63 || (std::uint64_t{ 1 } << bits) > limits.max_bases) {
        throw ResourceLimitError("enumerating (2^" + std::to_string(alphabet_size) + ")^" + std::to_string(k)
            + " bases exceeds the configured budget");
    }
    return std::uint64_t{ 1 } << bits;
}

auto decode_base(std::uint64_t index, std::size_t alphabet_size, std::size_t k) -> std::vector<State>
{
    std::vector<State> base(k);
    State const mask = (State{ 1 } << alphabet_size) - 1;
    for (std::size_t j = 0; j < k; ++j) {
        base[j] = static_cast<State>(index >> (j * alphabet_size)) & mask;
    }
    return base;
}

auto sat_bounded(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits) -> BoundedVerdict
{
    check_bound(k);
    check_atoms(f, alphabet);
    auto const local = restrict_alphabet(f, alphabet);
    auto const n = local.size();
    base_count(n, k, limits);
    CompiledFormula const compiled(f, local);
    Deadline deadline(limits.timeout);
    std::vector<std::uint32_t> positions(n);
    std::uint64_t step = 0;
    for (std::size_t len = 1; len <= k; ++len) {
        auto const total = std::uint64_t{ 1 } << (n * len);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            deadline.check(++step);
            decode_positions(idx, n, len, positions.data());
            auto const mask = compiled.loop_mask(positions, len);
            if (mask != 0) {
                LassoTrace witness;
                for (auto s : decode_base(idx, n, len)) {
                    witness.base.push_back(lift_state(s, local, alphabet));
                }
                witness.loop_start = static_cast<std::size_t>(std::countr_zero(mask));
                return BoundedVerdict::sat(std::move(witness));
            }
        }
    }
    return BoundedVerdict::unsat(k);
}

auto sat_bounded(Formula const& f, std::size_t k, Limits const& limits) -> BoundedVerdict
{
    auto const names = atoms(f);
    return sat_bounded(f, Alphabet(std::vector<std::string>(names.begin(), names.end())), k, limits);
}

auto count_bases(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits) -> std::uint64_t
{
    check_bound(k);
    check_atoms(f, alphabet);
    auto const local = restrict_alphabet(f, alphabet);
    auto const n = local.size();
    auto const free_bits = (alphabet.size() - n) * k;
    if (alphabet.size() * k >= 64) {
        throw ResourceLimitError("base count does not fit in 64 bits");
    }
    auto const total = base_count(n, k, limits);
    CompiledFormula const compiled(f, local);
    Deadline deadline(limits.timeout);
    std::vector<std::uint32_t> positions(n);
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        deadline.check(idx + 1);
        decode_positions(idx, n, k, positions.data());
        if (compiled.loop_mask(positions, k) != 0) {
            ++count;
        }
    }
    return count << free_bits;
}

auto loop_mask_table(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits) -> MaskTable
{
    check_bound(k);
    auto const n = alphabet.size();
    auto const total = base_count(n, k, limits);
    CompiledFormula const compiled(f, alphabet);
    Deadline deadline(limits.timeout);
    std::vector<std::uint32_t> positions(n);
    MaskTable table(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        deadline.check(idx + 1);
        decode_positions(idx, n, k, positions.data());
        table[idx] = static_cast<std::uint16_t>(compiled.loop_mask(positions, k));
    }
    return table;
}

auto trace_to_json(LassoTrace const& t, Alphabet const& alphabet) -> nlohmann::ordered_json
{
    nlohmann::ordered_json j;
    auto base = nlohmann::ordered_json::array();
    for (auto s : t.base) {
        auto state = nlohmann::ordered_json::array();
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            if ((s >> a) & 1U) {
                state.push_back(alphabet.name(a));
            }
        }
        base.push_back(std::move(state));
    }
    j["base"] = std::move(base);
    j["loop"] = t.loop_start;
    return j;
}

auto trace_from_json(nlohmann::json const& j, Alphabet const& alphabet) -> LassoTrace
{
    LassoTrace t;
    if (!j.is_object() || !j.contains("base") || !j.at("base").is_array()) {
        throw std::invalid_argument("trace JSON needs a 'base' array");
    }
    for (auto const& state : j.at("base")) {
        State s = 0;
        for (auto const& atom : state) {
            auto const name = atom.get<std::string>();
            auto idx = alphabet.index_of(name);
            if (!idx) {
                throw AlphabetMismatchError("trace atom '" + name + "' is not in the alphabet");
            }
            s |= State{ 1 } << *idx;
        }
        t.base.push_back(s);
    }
    t.loop_start = j.value("loop", std::size_t{ 0 });
    if (t.base.empty() || t.loop_start >= t.base.size()) {
        throw std::invalid_argument("trace needs a nonempty base and a loop index inside it");
    }
    return t;
}

}  // namespace gcr
