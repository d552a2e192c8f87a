#include "gcr/spec_file.hpp"

#include <fstream>
#include <sstream>

#include "gcr/parser.hpp"

namespace gcr {

SpecFileError::SpecFileError(std::string const& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "")
          + ": " + message)
    , line_(line)
    , column_(column)
{
}

auto SpecFile::specification() const -> Specification
{
    return Specification{ alphabet, dom, goals };
}

auto SpecFile::problem() const -> Problem
{
    if (bcs.empty()) {
        throw std::invalid_argument("the specification declares no boundary conditions (add a 'bc:' line)");
    }
    return Problem{ specification(), bcs };
}

namespace {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line;
    std::size_t value_column;
};

auto trim_left(std::string_view s, std::size_t& offset) -> std::string_view
{
    while (offset < s.size() && (s[offset] == ' ' || s[offset] == '\t')) {
        ++offset;
    }
    return s.substr(offset);
}

auto strip_trailing(std::string_view s) -> std::string_view
{
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

auto parse_spec_file(std::string_view text) -> SpecFile
{
    std::vector<Entry> entries;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto line = text.substr(start, end - start);
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = strip_trailing(line);
        std::size_t offset = 0;
        if (trim_left(line, offset).empty()) {
            continue;
        }
        auto const colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw SpecFileError("expected '<key>: <value>'", line_no, offset + 1);
        }
        std::size_t key_off = offset;
        auto key = strip_trailing(line.substr(key_off, colon - key_off));
        std::size_t value_off = colon + 1;
        auto value = trim_left(line, value_off);
        entries.push_back({ std::string(key), std::string(value), line_no, value_off + 1 });
    }

    SpecFile out;
    std::vector<std::string> names;
    bool seen_aps = false;
    for (auto const& e : entries) {
        if (e.key == "aps") {
            seen_aps = true;
            std::istringstream in(e.value);
            std::string name;
            while (in >> name) {
                for (auto const& n : names) {
                    if (n == name) {
                        throw SpecFileError("atom '" + name + "' declared twice", e.line, e.value_column);
                    }
                }
                names.push_back(name);
            }
        } else if (e.key == "name") {
            if (!out.name.empty()) {
                throw SpecFileError("'name' given twice", e.line);
            }
            out.name = e.value;
        } else if (e.key != "dom" && e.key != "goal" && e.key != "bc") {
            throw SpecFileError("unknown key '" + e.key + "'", e.line);
        }
    }
    if (!seen_aps || names.empty()) {
        throw SpecFileError("missing 'aps:' declaration", line_no);
    }
    try {
        out.alphabet = Alphabet(names);
    } catch (std::exception const& ex) {
        throw SpecFileError(ex.what(), 1);
    }

    for (auto const& e : entries) {
        std::vector<Formula>* target = nullptr;
        if (e.key == "dom") {
            target = &out.dom;
        } else if (e.key == "goal") {
            target = &out.goals;
        } else if (e.key == "bc") {
            target = &out.bcs;
        } else {
            continue;
        }
        if (e.value.empty()) {
            throw SpecFileError("empty formula", e.line, e.value_column);
        }
        try {
            target->push_back(parse(e.value, out.alphabet));
        } catch (ParseError const& ex) {
            throw SpecFileError(ex.detail(), e.line, e.value_column + ex.column() - 1);
        } catch (UnknownAtomError const& ex) {
            throw SpecFileError("atom '" + ex.atom() + "' is not declared in 'aps:'", e.line, e.value_column);
        }
    }
    if (out.goals.empty()) {
        throw SpecFileError("at least one 'goal:' line is required", line_no);
    }
    return out;
}

auto load_spec_file(std::filesystem::path const& path) -> SpecFile
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_file(buf.str());
}

auto render_spec_file(SpecFile const& f) -> std::string
{
    std::ostringstream out;
    if (!f.name.empty()) {
        out << "name: " << f.name << '\n';
    }
    out << "aps:";
    for (auto const& n : f.alphabet.names()) {
        out << ' ' << n;
    }
    out << '\n';
    for (auto const& d : f.dom) {
        out << "dom: " << to_string(d) << '\n';
    }
    for (auto const& g : f.goals) {
        out << "goal: " << to_string(g) << '\n';
    }
    for (auto const& b : f.bcs) {
        out << "bc: " << to_string(b) << '\n';
    }
    return out.str();
}

}  // namespace gcr
