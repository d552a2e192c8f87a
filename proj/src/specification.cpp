#include "gcr/specification.hpp"

#include <stdexcept>

#include "gcr/parser.hpp"

namespace gcr {

auto Specification::conjunction() const -> Formula
{
    auto all = dom;
    all.insert(all.end(), goals.begin(), goals.end());
    return gcr::conjunction(all);
}

auto Specification::with_goals(std::vector<Formula> new_goals) const -> Specification
{
    return Specification{ alphabet, dom, std::move(new_goals) };
}

void Specification::validate() const
{
    if (goals.empty()) {
        throw std::invalid_argument("a specification needs at least one goal");
    }
    auto check = [&](Formula const& f) {
        for (auto const& a : atoms(f)) {
            if (!alphabet.contains(a)) {
                throw std::invalid_argument("formula '" + to_string(f) + "' uses undeclared atom '" + a + "'");
            }
        }
    };
    for (auto const& f : dom) {
        check(f);
    }
    for (auto const& f : goals) {
        check(f);
    }
}

}  // namespace gcr
