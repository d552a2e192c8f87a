#include "gcr/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcr {

Alphabet::Alphabet(std::initializer_list<std::string> names) : Alphabet(std::vector<std::string>(names)) {}

Alphabet::Alphabet(std::vector<std::string> names)
{
    for (auto& n : names) {
        if (n.empty()) {
            throw std::invalid_argument("atom names must be nonempty");
        }
        if (!contains(n)) {
            names_.push_back(std::move(n));
        }
    }
    if (names_.size() > max_size) {
        throw std::invalid_argument("alphabet exceeds " + std::to_string(max_size) + " atoms");
    }
}

auto Alphabet::index_of(std::string const& name) const -> std::optional<std::size_t>
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
}

auto Alphabet::merged(Alphabet const& other) const -> Alphabet
{
    auto all = names_;
    all.insert(all.end(), other.names_.begin(), other.names_.end());
    return Alphabet(std::move(all));
}

}  // namespace gcr
