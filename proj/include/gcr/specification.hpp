#pragma once

#include <vector>

#include "gcr/alphabet.hpp"
#include "gcr/formula.hpp"

namespace gcr {

/// Domain properties plus goals over one alphabet. The domain part never
/// changes during a search; candidates differ only in their goals.
struct Specification {
    Alphabet alphabet;
    std::vector<Formula> dom;
    std::vector<Formula> goals;

    [[nodiscard]] auto dom_conjunction() const -> Formula { return gcr::conjunction(dom); }
    [[nodiscard]] auto goal_conjunction() const -> Formula { return gcr::conjunction(goals); }
    /// Dom && G_1 && ... && G_n
    [[nodiscard]] auto conjunction() const -> Formula;

    /// Copy with different goals and the same alphabet and domain.
    [[nodiscard]] auto with_goals(std::vector<Formula> new_goals) const -> Specification;

    /// Throws std::invalid_argument when there are no goals or a formula
    /// mentions an undeclared atom.
    void validate() const;

    friend auto operator==(Specification const&, Specification const&) -> bool = default;
};

}  // namespace gcr
