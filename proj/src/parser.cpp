#include "gcr/parser.hpp"

#include <cctype>
#include <optional>

namespace gcr {

ParseError::ParseError(std::string const& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message)
    , detail_(message)
    , line_(line)
    , column_(column)
{
}

UnknownAtomError::UnknownAtomError(std::string atom)
    : std::runtime_error("unknown atom '" + atom + "'")
    , atom_(std::move(atom))
{
}

namespace {

enum class Tok {
    Ident,
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    Until,
    WeakUntil,
    Release,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    auto tokens() -> std::vector<Token>
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            auto const line = line_;
            auto const col = col_;
            if (pos_ >= text_.size()) {
                out.push_back({ Tok::End, "", line, col });
                return out;
            }
            char const c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t end = pos_;
                while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
                    ++end;
                }
                std::string word(text_.substr(pos_, end - pos_));
                advance(end - pos_);
                out.push_back({ keyword(word), std::move(word), line, col });
                continue;
            }
            auto sym = symbol_at();
            if (!sym) {
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
            }
            auto const& [kind, len] = *sym;
            out.push_back({ kind, std::string(text_.substr(pos_, len)), line, col });
            advance(len);
        }
    }

private:
    static auto keyword(std::string const& w) -> Tok
    {
        if (w == "true") return Tok::True;
        if (w == "false") return Tok::False;
        if (w == "X") return Tok::Next;
        if (w == "F") return Tok::Eventually;
        if (w == "G") return Tok::Always;
        if (w == "U") return Tok::Until;
        if (w == "W") return Tok::WeakUntil;
        if (w == "R") return Tok::Release;
        return Tok::Ident;
    }

    auto symbol_at() const -> std::optional<std::pair<Tok, std::size_t>>
    {
        auto rest = text_.substr(pos_);
        if (rest.starts_with("<->")) return std::pair{ Tok::Iff, std::size_t{ 3 } };
        if (rest.starts_with("->")) return std::pair{ Tok::Implies, std::size_t{ 2 } };
        if (rest.starts_with("&&")) return std::pair{ Tok::And, std::size_t{ 2 } };
        if (rest.starts_with("||")) return std::pair{ Tok::Or, std::size_t{ 2 } };
        if (rest.starts_with("!")) return std::pair{ Tok::Not, std::size_t{ 1 } };
        if (rest.starts_with("(")) return std::pair{ Tok::LParen, std::size_t{ 1 } };
        if (rest.starts_with(")")) return std::pair{ Tok::RParen, std::size_t{ 1 } };
        return std::nullopt;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance(1);
        }
    }

    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n; ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Alphabet const* alphabet) : tokens_(std::move(tokens)), alphabet_(alphabet) {}

    auto parse_all() -> Formula
    {
        auto f = parse_iff();
        if (peek().kind != Tok::End) {
            fail("unexpected '" + peek().text + "'");
        }
        return f;
    }

private:
    auto parse_iff() -> Formula
    {
        auto lhs = parse_implies();
        if (accept(Tok::Iff)) {
            return ltl::iff(std::move(lhs), parse_iff());
        }
        return lhs;
    }

    auto parse_implies() -> Formula
    {
        auto lhs = parse_or();
        if (accept(Tok::Implies)) {
            return ltl::implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    auto parse_or() -> Formula
    {
        auto lhs = parse_and();
        while (accept(Tok::Or)) {
            lhs = ltl::disj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    auto parse_and() -> Formula
    {
        auto lhs = parse_temporal();
        while (accept(Tok::And)) {
            lhs = ltl::conj(std::move(lhs), parse_temporal());
        }
        return lhs;
    }

    auto parse_temporal() -> Formula
    {
        auto lhs = parse_unary();
        switch (peek().kind) {
        case Tok::Until:
            ++pos_;
            return Formula::binary(Op::Until, std::move(lhs), parse_temporal());
        case Tok::WeakUntil:
            ++pos_;
            return Formula::binary(Op::WeakUntil, std::move(lhs), parse_temporal());
        case Tok::Release:
            ++pos_;
            return Formula::binary(Op::Release, std::move(lhs), parse_temporal());
        default:
            return lhs;
        }
    }

    auto parse_unary() -> Formula
    {
        switch (peek().kind) {
        case Tok::Not:
            ++pos_;
            return ltl::neg(parse_unary());
        case Tok::Next:
            ++pos_;
            return ltl::next(parse_unary());
        case Tok::Eventually:
            ++pos_;
            return ltl::eventually(parse_unary());
        case Tok::Always:
            ++pos_;
            return ltl::always(parse_unary());
        default:
            return parse_primary();
        }
    }

    auto parse_primary() -> Formula
    {
        auto const& tok = peek();
        switch (tok.kind) {
        case Tok::True:
            ++pos_;
            return ltl::tt();
        case Tok::False:
            ++pos_;
            return ltl::ff();
        case Tok::Ident: {
            if (alphabet_ != nullptr && !alphabet_->contains(tok.text)) {
                throw UnknownAtomError(tok.text);
            }
            ++pos_;
            return ltl::atom(tok.text);
        }
        case Tok::LParen: {
            ++pos_;
            auto inner = parse_iff();
            if (!accept(Tok::RParen)) {
                fail("expected ')'");
            }
            return inner;
        }
        case Tok::End:
            fail("unexpected end of input");
        default:
            fail("unexpected '" + tok.text + "'");
        }
    }

    auto peek() const -> Token const& { return tokens_[pos_]; }

    auto accept(Tok kind) -> bool
    {
        if (peek().kind == kind) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::string const& message) const
    {
        throw ParseError(message, peek().line, peek().column);
    }

    std::vector<Token> tokens_;
    Alphabet const* alphabet_;
    std::size_t pos_ = 0;
};

void render_into(Formula const& f, TokenStream& out)
{
    switch (f.arity()) {
    case 0:
        out.emplace_back(f.op() == Op::Atom ? f.name() : std::string(symbol(f.op())));
        return;
    case 1:
        out.emplace_back(symbol(f.op()));
        out.emplace_back("(");
        render_into(f.child(0), out);
        out.emplace_back(")");
        return;
    default:
        for (std::size_t i = 0; i < 2; ++i) {
            auto const& c = f.child(i);
            bool const wrap = c.arity() == 2;
            if (wrap) {
                out.emplace_back("(");
            }
            render_into(c, out);
            if (wrap) {
                out.emplace_back(")");
            }
            if (i == 0) {
                out.emplace_back(symbol(f.op()));
            }
        }
    }
}

}  // namespace

auto parse(std::string_view text) -> Formula
{
    return Parser(Lexer(text).tokens(), nullptr).parse_all();
}

auto parse(std::string_view text, Alphabet const& alphabet) -> Formula
{
    return Parser(Lexer(text).tokens(), &alphabet).parse_all();
}

auto render(Formula const& f) -> TokenStream
{
    TokenStream out;
    render_into(f, out);
    return out;
}

auto join(TokenStream const& tokens) -> std::string
{
    std::string out;
    for (auto const& t : tokens) {
        if (!out.empty()) {
            out += ' ';
        }
        out += t;
    }
    return out;
}

auto to_string(Formula const& f) -> std::string
{
    return join(render(f));
}

}  // namespace gcr

namespace gcr {

auto pretty(Formula const& f) -> std::string
{
    auto const tokens = render(f);
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto const& t = tokens[i];
        if (i > 0) {
            auto const& prev = tokens[i - 1];
            bool const glued = prev == "(" || t == ")" || prev == "!"
                || (t == "(" && (prev == "X" || prev == "F" || prev == "G"));
            if (!glued) {
                out += ' ';
            }
        }
        out += t;
    }
    return out;
}

}  // namespace gcr
