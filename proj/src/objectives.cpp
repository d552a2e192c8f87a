#include "gcr/objectives.hpp"

#include <algorithm>
#include <iostream>

namespace gcr {

namespace {

constexpr std::size_t goal_cache_capacity = 512;

auto sat_or_pessimistic(Formula const& f, Alphabet const& alphabet, std::size_t k, Limits const& limits,
    char const* what) -> bool
{
    try {
        return sat_bounded(f, alphabet, k, limits).is_sat();
    } catch (ResourceLimitError const& e) {
        std::cerr << "warning: " << what << " check gave up (" << e.what() << "); treating as unsatisfiable\n";
        return false;
    }
}

auto ratio(std::uint64_t num, std::uint64_t den) -> double
{
    if (num == 0 || den == 0) {
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

auto check_bc(Specification const& spec, Formula const& bc, std::size_t k, Limits const& limits) -> BoundaryConditionReport
{
    auto const& ab = spec.alphabet;
    auto const dom = spec.dom_conjunction();
    BoundaryConditionReport report;
    auto const all = ltl::conj(ltl::conj(dom, bc), spec.goal_conjunction());
    report.inconsistency = !sat_bounded(all, ab, k, limits).is_sat();
    for (std::size_t i = 0; i < spec.goals.size(); ++i) {
        std::vector<Formula> rest;
        for (std::size_t j = 0; j < spec.goals.size(); ++j) {
            if (j != i) {
                rest.push_back(spec.goals[j]);
            }
        }
        auto const f = ltl::conj(ltl::conj(dom, bc), conjunction(rest));
        report.minimality.push_back(sat_bounded(f, ab, k, limits).is_sat());
    }
    auto const negated_goals = ltl::neg(spec.goal_conjunction());
    report.non_triviality = !bounded_equivalent(bc, negated_goals, ab, k, limits);
    report.holds = report.inconsistency && report.non_triviality
        && std::all_of(report.minimality.begin(), report.minimality.end(), [](bool b) { return b; });
    return report;
}

auto consistency(Specification const& spec, std::size_t k, Limits const& limits) -> double
{
    if (sat_or_pessimistic(spec.conjunction(), spec.alphabet, k, limits, "domain consistency")) {
        return 1.0;
    }
    if (sat_or_pessimistic(spec.goal_conjunction(), spec.alphabet, k, limits, "goal consistency")) {
        return 0.5;
    }
    return 0.0;
}

auto resolved_ratio(Specification const& spec, std::vector<Formula> const& bcs, std::size_t k, Limits const& limits) -> double
{
    if (bcs.empty()) {
        throw std::invalid_argument("at least one boundary condition is required");
    }
    std::size_t resolved = 0;
    auto const conj = spec.conjunction();
    for (auto const& bc : bcs) {
        if (sat_or_pessimistic(ltl::conj(bc, conj), spec.alphabet, k, limits, "resolution")) {
            ++resolved;
        }
    }
    return static_cast<double>(resolved) / static_cast<double>(bcs.size());
}

auto token_levenshtein(TokenStream const& a, TokenStream const& b) -> std::size_t
{
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            auto const sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({ prev[j] + 1, cur[j - 1] + 1, sub });
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

auto goal_tokens(Specification const& spec) -> TokenStream
{
    TokenStream out;
    for (auto const& g : spec.goals) {
        auto t = render(g);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

namespace {
    auto similarity_of(TokenStream const& a, TokenStream const& b) -> double
    {
        auto const max_len = std::max(a.size(), b.size());
        if (max_len == 0) {
            return 1.0;
        }
        auto const d = token_levenshtein(a, b);
        return static_cast<double>(max_len - d) / static_cast<double>(max_len);
    }
}  // namespace

auto syntactic_similarity(Specification const& orig, Specification const& cand) -> double
{
    return similarity_of(goal_tokens(orig), goal_tokens(cand));
}

auto semantic_similarity(Specification const& orig, Specification const& cand, std::size_t k, Limits const& limits) -> double
{
    auto const ab = orig.alphabet.merged(cand.alphabet);
    auto const s = orig.conjunction();
    auto const c = cand.conjunction();
    auto const both = count_bases(ltl::conj(s, c), ab, k, limits);
    if (both == 0) {
        return 0.0;
    }
    return ratio(both, count_bases(ltl::disj(s, c), ab, k, limits));
}

auto is_valid_resolution(Specification const& orig, Specification const& cand, std::vector<Formula> const& bcs,
    std::size_t k, Limits const& limits) -> bool
{
    (void)orig;
    return consistency(cand, k, limits) == 1.0 && resolved_ratio(cand, bcs, k, limits) == 1.0;
}

auto evaluate_fitness(Specification const& orig, Specification const& cand, std::vector<Formula> const& bcs,
    std::size_t k, Limits const& limits) -> FitnessVector
{
    return FitnessVector{
        consistency(cand, k, limits),
        resolved_ratio(cand, bcs, k, limits),
        syntactic_similarity(orig, cand),
        semantic_similarity(orig, cand, k, limits),
    };
}

auto bounded_equivalent(Formula const& a, Formula const& b, Alphabet const& alphabet, std::size_t k, Limits const& limits) -> bool
{
    return !sat_bounded(ltl::neg(ltl::iff(a, b)), alphabet, k, limits).is_sat();
}

auto FitnessEvaluator::GoalsHash::operator()(std::vector<Formula> const& goals) const noexcept -> std::size_t
{
    std::size_t h = goals.size();
    for (auto const& g : goals) {
        h ^= g.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

FitnessEvaluator::FitnessEvaluator(Specification original, std::vector<Formula> bcs, std::size_t k, Limits limits)
    : original_(std::move(original))
    , bcs_(std::move(bcs))
    , k_(k)
    , limits_(limits)
{
    original_.validate();
    if (bcs_.empty()) {
        throw std::invalid_argument("at least one boundary condition is required");
    }
    original_tokens_ = goal_tokens(original_);
    auto const& ab = original_.alphabet;
    dom_ = loop_mask_table(original_.dom_conjunction(), ab, k_, limits_);
    original_conj_ = loop_mask_table(original_.conjunction(), ab, k_, limits_);
    for (auto const& bc : bcs_) {
        bc_tables_.push_back(loop_mask_table(bc, ab, k_, limits_));
    }
}

auto FitnessEvaluator::goal_table(Formula const& goal) -> std::shared_ptr<MaskTable const>
{
    if (auto it = goal_tables_.find(goal); it != goal_tables_.end()) {
        return it->second;
    }
    if (goal_tables_.size() >= goal_cache_capacity) {
        goal_tables_.clear();
    }
    auto table = std::make_shared<MaskTable const>(loop_mask_table(goal, original_.alphabet, k_, limits_));
    goal_tables_.emplace(goal, table);
    return table;
}

auto FitnessEvaluator::evaluate(Specification const& cand) -> FitnessVector
{
    if (!(cand.alphabet == original_.alphabet) || !(cand.dom == original_.dom)) {
        throw std::invalid_argument("candidate must share the alphabet and domain of the original specification");
    }
    if (auto it = memo_.find(cand.goals); it != memo_.end()) {
        return it->second;
    }
    FitnessVector v;
    try {
        v = compute(cand);
    } catch (ResourceLimitError const& e) {
        std::cerr << "warning: candidate evaluation gave up (" << e.what() << "); scoring pessimistically\n";
        v = FitnessVector{ 0.0, 0.0, similarity_of(original_tokens_, goal_tokens(cand)), 0.0 };
    }
    ++computed_;
    memo_.emplace(cand.goals, v);
    return v;
}

auto FitnessEvaluator::compute(Specification const& cand) -> FitnessVector
{
    std::vector<std::shared_ptr<MaskTable const>> goals;
    goals.reserve(cand.goals.size());
    for (auto const& g : cand.goals) {
        goals.push_back(goal_table(g));
    }
    auto const n = dom_.size();
    auto const nbc = bc_tables_.size();
    bool goals_sat = false;
    bool dom_goals_sat = false;
    std::vector<bool> resolved(nbc, false);
    std::size_t resolved_count = 0;
    std::uint64_t both = 0;
    std::uint64_t either = 0;
    for (std::size_t b = 0; b < n; ++b) {
        std::uint16_t g = 0xffff;
        for (auto const& t : goals) {
            g &= (*t)[b];
        }
        auto const c = static_cast<std::uint16_t>(g & dom_[b]);
        auto const s = original_conj_[b];
        goals_sat = goals_sat || g != 0;
        if (c != 0) {
            dom_goals_sat = true;
            if (resolved_count < nbc) {
                for (std::size_t i = 0; i < nbc; ++i) {
                    if (!resolved[i] && (c & bc_tables_[i][b]) != 0) {
                        resolved[i] = true;
                        ++resolved_count;
                    }
                }
            }
        }
        both += (s & c) != 0 ? 1 : 0;
        either += (s | c) != 0 ? 1 : 0;
    }
    FitnessVector v;
    v.consistency = dom_goals_sat ? 1.0 : (goals_sat ? 0.5 : 0.0);
    v.resolved = static_cast<double>(resolved_count) / static_cast<double>(nbc);
    v.syntactic = similarity_of(original_tokens_, goal_tokens(cand));
    v.semantic = ratio(both, either);
    return v;
}

}  // namespace gcr
