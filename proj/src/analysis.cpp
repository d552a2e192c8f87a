#include "gcr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace gcr {

namespace {

void require_nonempty(Sample const& s)
{
    if (s.empty()) {
        throw std::invalid_argument("samples must be nonempty");
    }
}

/// Counts of pairs with a_i > b_j and a_i == b_j.
auto pair_counts(Sample const& a, Sample const& b) -> std::pair<double, double>
{
    double greater = 0;
    double equal = 0;
    for (auto x : a) {
        for (auto y : b) {
            if (x > y) {
                greater += 1;
            } else if (x == y) {
                equal += 1;
            }
        }
    }
    return { greater, equal };
}

/// Average ranks of all pooled values plus the tie term sum(t^3 - t).
struct Ranking {
    std::map<double, double> rank;
    double ties = 0.0;
};

auto rank_pooled(std::vector<Sample> const& groups) -> Ranking
{
    std::map<double, std::size_t> freq;
    for (auto const& g : groups) {
        for (auto v : g) {
            ++freq[v];
        }
    }
    Ranking r;
    double below = 0;
    for (auto const& [v, n] : freq) {
        auto const t = static_cast<double>(n);
        r.rank[v] = below + (t + 1.0) / 2.0;
        r.ties += t * t * t - t;
        below += t;
    }
    return r;
}

auto clamp_p(double p) -> double { return std::clamp(p, 0.0, 1.0); }

}  // namespace

auto similarity_front(ParetoArchive const& front) -> std::vector<FrontPoint2D>
{
    std::vector<FrontPoint2D> out;
    for (auto const& c : front.members()) {
        out.push_back({ c.fitness.syntactic, c.fitness.semantic });
    }
    return out;
}

auto hypervolume(std::vector<FrontPoint2D> const& front) -> double
{
    auto pts = front;
    std::sort(pts.begin(), pts.end(), [](FrontPoint2D const& a, FrontPoint2D const& b) {
        return a.syntactic != b.syntactic ? a.syntactic > b.syntactic : a.semantic > b.semantic;
    });
    double area = 0.0;
    double height = 0.0;
    for (auto const& p : pts) {
        if (p.semantic > height) {
            area += p.syntactic * (p.semantic - height);
            height = p.semantic;
        }
    }
    return area;
}

auto igd(std::vector<FrontPoint2D> const& front, std::vector<FrontPoint2D> const& reference) -> double
{
    if (front.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    if (reference.empty()) {
        throw std::invalid_argument("reference set must be nonempty");
    }
    double total = 0.0;
    for (auto const& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (auto const& p : front) {
            auto const dx = p.syntactic - r.syntactic;
            auto const dy = p.semantic - r.semantic;
            best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
        total += best;
    }
    return total / static_cast<double>(reference.size());
}

auto kruskal_wallis(std::vector<Sample> const& groups) -> StatResult
{
    if (groups.size() < 2) {
        throw std::invalid_argument("Kruskal-Wallis needs at least two groups");
    }
    for (auto const& g : groups) {
        require_nonempty(g);
    }
    auto const ranking = rank_pooled(groups);
    double n = 0;
    for (auto const& g : groups) {
        n += static_cast<double>(g.size());
    }
    auto const correction = 1.0 - ranking.ties / (n * n * n - n);
    if (correction <= 0.0) {
        return StatResult{ 0.0, 1.0, 0.0 };
    }
    double h = 0.0;
    for (auto const& g : groups) {
        double sum = 0.0;
        for (auto v : g) {
            sum += ranking.rank.at(v);
        }
        h += sum * sum / static_cast<double>(g.size());
    }
    h = (12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0)) / correction;
    h = std::max(h, 0.0);
    boost::math::chi_squared const dist(static_cast<double>(groups.size() - 1));
    return StatResult{ h, clamp_p(boost::math::cdf(boost::math::complement(dist, h))), 0.0 };
}

auto mann_whitney(Sample const& a, Sample const& b) -> StatResult
{
    require_nonempty(a);
    require_nonempty(b);
    auto const [greater, equal] = pair_counts(a, b);
    auto const n1 = static_cast<double>(a.size());
    auto const n2 = static_cast<double>(b.size());
    auto const u = greater + 0.5 * equal;
    auto const n = n1 + n2;
    auto const ties = rank_pooled({ a, b }).ties;
    auto const variance = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    double p = 1.0;
    if (variance > 0.0) {
        auto const z = std::abs(u - n1 * n2 / 2.0) / std::sqrt(variance);
        boost::math::normal const standard;
        p = clamp_p(2.0 * boost::math::cdf(boost::math::complement(standard, z)));
    }
    return StatResult{ u, p, u / (n1 * n2) };
}

auto a12(Sample const& a, Sample const& b) -> StatResult
{
    require_nonempty(a);
    require_nonempty(b);
    auto const [greater, equal] = pair_counts(a, b);
    auto const value = (greater + 0.5 * equal) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return StatResult{ value, 1.0, value };
}

}  // namespace gcr
