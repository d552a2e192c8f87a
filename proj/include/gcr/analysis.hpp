#pragma once

#include <vector>

#include "gcr/search.hpp"

namespace gcr {

/// A resolution projected onto its two similarity objectives.
struct FrontPoint2D {
    double syntactic = 0.0;
    double semantic = 0.0;

    friend auto operator==(FrontPoint2D const&, FrontPoint2D const&) -> bool = default;
};

struct StatResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double effect_size = 0.0;
};

using Sample = std::vector<double>;

/// (syntactic, semantic) projection of every member of the front.
[[nodiscard]] auto similarity_front(ParetoArchive const& front) -> std::vector<FrontPoint2D>;

/// Area of the union of [0, x] x [0, y] over the points; 0 for an empty front.
[[nodiscard]] auto hypervolume(std::vector<FrontPoint2D> const& front) -> double;

/// Mean distance from each reference point to its nearest front point;
/// +inf for an empty front.
[[nodiscard]] auto igd(std::vector<FrontPoint2D> const& front,
    std::vector<FrontPoint2D> const& reference = { FrontPoint2D{ 1.0, 1.0 } }) -> double;

/// H with average ranks and tie correction; chi-square p-value with
/// groups - 1 degrees of freedom.
[[nodiscard]] auto kruskal_wallis(std::vector<Sample> const& groups) -> StatResult;

/// U = #{a_i > b_j} + #{a_i = b_j} / 2. Two-sided p from the normal
/// approximation with tie correction. effect_size holds A12(a, b).
[[nodiscard]] auto mann_whitney(Sample const& a, Sample const& b) -> StatResult;

/// Probability that a draw from `a` beats one from `b`, ties counting half.
/// The value is stored in both statistic and effect_size.
[[nodiscard]] auto a12(Sample const& a, Sample const& b) -> StatResult;

}  // namespace gcr
