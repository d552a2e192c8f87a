#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gcr/alphabet.hpp"
#include "gcr/formula.hpp"

namespace gcr {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string const& message, std::size_t line, std::size_t column);

    [[nodiscard]] auto line() const noexcept -> std::size_t { return line_; }
    [[nodiscard]] auto column() const noexcept -> std::size_t { return column_; }
    /// The message without the position prefix.
    [[nodiscard]] auto detail() const noexcept -> std::string const& { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

class UnknownAtomError : public std::runtime_error {
public:
    explicit UnknownAtomError(std::string atom);

    [[nodiscard]] auto atom() const noexcept -> std::string const& { return atom_; }

private:
    std::string atom_;
};

/// Parses LTL concrete syntax. Precedence, tightest first: the prefix
/// operators `! X F G`, then `U W R` (right-associative), `&&`, `||`,
/// `->` (right-associative), `<->` (right-associative).
[[nodiscard]] auto parse(std::string_view text) -> Formula;

/// As above, additionally rejecting atoms outside `alphabet`.
[[nodiscard]] auto parse(std::string_view text, Alphabet const& alphabet) -> Formula;

using TokenStream = std::vector<std::string>;

/// Fully parenthesized token rendering: every unary operand sits in
/// parentheses and every binary operand of a binary operator is wrapped, so
/// the stream re-parses to the same tree under any precedence table.
[[nodiscard]] auto render(Formula const& f) -> TokenStream;

/// Tokens of `render(f)` joined by single spaces.
[[nodiscard]] auto to_string(Formula const& f) -> std::string;

/// Compact rendering for people, e.g. `G(m -> X(!(p)))`. Re-parses to `f`.
[[nodiscard]] auto pretty(Formula const& f) -> std::string;

[[nodiscard]] auto join(TokenStream const& tokens) -> std::string;

}  // namespace gcr
