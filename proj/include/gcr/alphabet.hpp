#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gcr {

/// Ordered set of atomic proposition names. The position of a name is the
/// bit it occupies in a State.
class Alphabet {
public:
    static constexpr std::size_t max_size = 30;

    Alphabet() = default;
    Alphabet(std::initializer_list<std::string> names);
    explicit Alphabet(std::vector<std::string> names);

    [[nodiscard]] auto size() const noexcept -> std::size_t { return names_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return names_.empty(); }
    [[nodiscard]] auto names() const noexcept -> std::vector<std::string> const& { return names_; }
    [[nodiscard]] auto name(std::size_t i) const -> std::string const& { return names_.at(i); }
    [[nodiscard]] auto index_of(std::string const& name) const -> std::optional<std::size_t>;
    [[nodiscard]] auto contains(std::string const& name) const -> bool { return index_of(name).has_value(); }

    /// Names of both alphabets; this alphabet's order first.
    [[nodiscard]] auto merged(Alphabet const& other) const -> Alphabet;

    friend auto operator==(Alphabet const&, Alphabet const&) -> bool = default;

private:
    std::vector<std::string> names_;
};

}  // namespace gcr
