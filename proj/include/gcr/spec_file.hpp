#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gcr/search.hpp"
#include "gcr/specification.hpp"

namespace gcr {

/// Contents of a `.spec` file:
///
///     # minepump
///     name: minepump
///     aps: p m h
///     dom: G((p && X p) -> X X !h)
///     goal: G(m -> X !p)
///     bc: F(h && m)
///
/// One entry per line; `#` starts a comment; `aps` may be repeated.
struct SpecFile {
    std::string name;
    Alphabet alphabet;
    std::vector<Formula> dom;
    std::vector<Formula> goals;
    std::vector<Formula> bcs;

    [[nodiscard]] auto specification() const -> Specification;
    /// Throws std::invalid_argument when there are no boundary conditions.
    [[nodiscard]] auto problem() const -> Problem;

    friend auto operator==(SpecFile const&, SpecFile const&) -> bool = default;
};

class SpecFileError : public std::runtime_error {
public:
    SpecFileError(std::string const& message, std::size_t line, std::size_t column = 0);

    [[nodiscard]] auto line() const noexcept -> std::size_t { return line_; }
    [[nodiscard]] auto column() const noexcept -> std::size_t { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

[[nodiscard]] auto parse_spec_file(std::string_view text) -> SpecFile;
[[nodiscard]] auto load_spec_file(std::filesystem::path const& path) -> SpecFile;

/// Canonical text of `f`; parses back to an equal SpecFile.
[[nodiscard]] auto render_spec_file(SpecFile const& f) -> std::string;

}  // namespace gcr
