#pragma once

// Plain-text formats for algebras, structures and assignments. Grammar:
//
//   file       := { section }
//   section    := algebra | structure | assignment | sketch
//   algebra    := "dqra" NAME SIZE NL [ "version" 1 ] { "provenance" TEXT }
//                 [ "labels" NAME{SIZE} ] "order" NL ROW01{SIZE}
//                 "mult" NL ROWNAMES{SIZE} "tilde" NAME{SIZE} "minus" NAME{SIZE}
//                 "neg" NAME{SIZE} "unit" NAME
//   structure  := "struct" NAME SIZE NL [ "version" 1 ] [ "labels" NAME{SIZE} ]
//                 "leq" NL ROW01{SIZE} "E" NL ROW01{SIZE}
//                 "alpha" POINT{SIZE} "beta" POINT{SIZE}
//   assignment := "assign" NAME NL { ELEMENT ":" "{" [ PAIR { "," PAIR } ] "}" }
//   PAIR       := "(" POINT "," POINT ")"
//
// '#' starts a comment (outside provenance lines). Element and point names are
// labels when a labels line is present and decimal indices otherwise. Keyword
// lines may appear in any order; block rows follow their keyword directly.
// Partial tables are rejected with the line and column of the first problem.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qra/algebra.hpp"
#include "qra/binrel.hpp"
#include "qra/error.hpp"
#include "qra/representation.hpp"
#include "qra/structure.hpp"

namespace qra {

inline constexpr int format_version = 1;

namespace text {

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Line {
    std::size_t number = 0;
    std::string raw;
    std::vector<Token> tokens;
};

struct Section {
    std::string kind;
    std::vector<Line> lines;  ///< lines[0] is the header

    const Line& header() const { return lines.front(); }
};

inline const std::set<std::string>& section_kinds() {
    static const std::set<std::string> k{"dqra", "struct", "assign", "sketch"};
    return k;
}

inline std::vector<Token> tokenize(std::string_view s, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size() || s[i] == '#') break;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '#') ++i;
        out.push_back({std::string(s.substr(start, i - start)), line, start + 1});
    }
    return out;
}

inline std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        ++number;
        pos = nl + 1;
        Line line{number, std::string(raw), tokenize(raw, number)};
        if (line.tokens.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        if (section_kinds().contains(line.tokens[0].text)) {
            out.push_back({line.tokens[0].text, {line}});
        } else if (out.empty()) {
            throw ParseError(number, line.tokens[0].column,
                             "expected a section header (dqra, struct, assign or sketch), found '" +
                                 line.tokens[0].text + "'");
        } else {
            out.back().lines.push_back(std::move(line));
        }
        if (nl == text.size()) break;
    }
    return out;
}

[[noreturn]] inline void fail_at(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

[[noreturn]] inline void fail_after(const Line& l, const std::string& msg) {
    throw ParseError(l.number, l.raw.size() + 1, msg);
}

inline std::size_t parse_count(const Token& t) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(t.text, &pos);
    } catch (const std::exception&) {
        fail_at(t, "expected a non-negative integer, found '" + t.text + "'");
    }
    if (pos != t.text.size()) fail_at(t, "expected a non-negative integer, found '" + t.text + "'");
    return v;
}

/// Resolves element/point names: labels when given, decimal indices otherwise.
class NameTable {
public:
    NameTable(std::size_t size, std::vector<std::string> labels) : size_(size), labels_(std::move(labels)) {}

    std::optional<std::size_t> lookup(const std::string& name) const {
        if (!labels_.empty()) {
            for (std::size_t i = 0; i < labels_.size(); ++i) {
                if (labels_[i] == name) return i;
            }
            return std::nullopt;
        }
        std::size_t pos = 0;
        try {
            const auto v = std::stoul(name, &pos);
            if (pos == name.size() && v < size_) return v;
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }

    std::size_t resolve(const Token& t, const char* what) const {
        if (auto v = lookup(t.text)) return *v;
        fail_at(t, std::string("unknown ") + what + " '" + t.text + "'");
    }

    std::string name(std::size_t i) const { return labels_.empty() ? std::to_string(i) : labels_.at(i); }

private:
    std::size_t size_;
    std::vector<std::string> labels_;
};

/// Line-oriented cursor over one section's body.
class BodyReader {
public:
    BodyReader(const Section& s, std::set<std::string> keywords) : s_(s), keywords_(std::move(keywords)) {}

    const Line* next() { return i_ < s_.lines.size() ? &s_.lines[i_++] : nullptr; }

    /// Reads `rows` lines of exactly `width` tokens following keyword line `kw`.
    std::vector<const Line*> block(const Line& kw, std::size_t rows, std::size_t width, const std::string& what,
                                   const NameTable* row_names) {
        if (kw.tokens.size() != 1) fail_at(kw.tokens[1], "unexpected token after '" + kw.tokens[0].text + "'");
        std::vector<const Line*> out;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string row_name = row_names ? row_names->name(r) : std::to_string(r);
            if (i_ >= s_.lines.size() || keywords_.contains(s_.lines[i_].tokens[0].text)) {
                const Line& at = i_ < s_.lines.size() ? s_.lines[i_] : (out.empty() ? kw : *out.back());
                throw ParseError(at.number, 1,
                                 what + " block is missing row " + std::to_string(r) + " (" + row_name + "): expected " +
                                     std::to_string(rows) + " rows");
            }
            const Line& l = s_.lines[i_++];
            if (l.tokens.size() < width) {
                fail_after(l, what + " row " + std::to_string(r) + " (" + row_name + ") has " +
                                  std::to_string(l.tokens.size()) + " entries, expected " + std::to_string(width));
            }
            if (l.tokens.size() > width) {
                fail_at(l.tokens[width], what + " row " + std::to_string(r) + " has more than " +
                                             std::to_string(width) + " entries");
            }
            out.push_back(&l);
        }
        return out;
    }

private:
    const Section& s_;
    std::set<std::string> keywords_;
    std::size_t i_ = 1;
};

inline std::vector<std::string> read_labels(const Line& l, std::size_t n, const std::set<std::string>& reserved) {
    if (l.tokens.size() != n + 1) {
        if (l.tokens.size() < n + 1) fail_after(l, "labels line needs " + std::to_string(n) + " names");
        fail_at(l.tokens[n + 1], "labels line has more than " + std::to_string(n) + " names");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        const auto& t = l.tokens[i];
        if (reserved.contains(t.text)) fail_at(t, "label '" + t.text + "' is a reserved keyword");
        for (const auto& prev : labels) {
            if (prev == t.text) fail_at(t, "duplicate label '" + t.text + "'");
        }
        labels.push_back(t.text);
    }
    return labels;
}

inline std::vector<std::vector<bool>> read_bits(const std::vector<const Line*>& rows) {
    std::vector<std::vector<bool>> out;
    for (const auto* l : rows) {
        std::vector<bool> row;
        for (const auto& t : l->tokens) {
            if (t.text != "0" && t.text != "1") fail_at(t, "expected 0 or 1, found '" + t.text + "'");
            row.push_back(t.text == "1");
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline void check_version(const Line& l) {
    if (l.tokens.size() != 2) fail_after(l, "version line needs exactly one number");
    if (parse_count(l.tokens[1]) != static_cast<std::size_t>(format_version)) {
        fail_at(l.tokens[1], "unsupported format version " + l.tokens[1].text);
    }
}

inline std::string rest_of_line(const Line& l) {
    // provenance keeps its raw text, including any '#'
    const auto pos = l.raw.find(l.tokens[0].text) + l.tokens[0].text.size();
    auto s = l.raw.substr(pos);
    const auto b = s.find_first_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b);
}

inline FiniteDqRA parse_algebra_section(const Section& s) {
    const auto& h = s.header();
    if (h.tokens.size() != 3) fail_after(h, "header must be 'dqra <name> <size>'");
    const std::string name = h.tokens[1].text;
    const std::size_t n = parse_count(h.tokens[2]);
    if (n == 0) fail_at(h.tokens[2], "algebra size must be positive");

    const std::set<std::string> keywords{"version", "provenance", "labels", "order", "mult",
                                         "tilde",   "minus",      "neg",    "unit"};
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < s.lines.size(); ++i) {
        if (s.lines[i].tokens[0].text == "labels") labels = read_labels(s.lines[i], n, keywords);
    }
    const NameTable names(n, labels);

    AlgebraTables t;
    t.name = name;
    t.labels = labels;
    std::set<std::string> seen;
    std::vector<std::string> provenance;
    BodyReader body(s, keywords);
    while (const Line* l = body.next()) {
        const auto& kw = l->tokens[0];
        if (!keywords.contains(kw.text)) fail_at(kw, "unexpected '" + kw.text + "' in algebra section");
        if (kw.text != "provenance" && !seen.insert(kw.text).second) fail_at(kw, "duplicate '" + kw.text + "' entry");
        if (kw.text == "version") {
            check_version(*l);
        } else if (kw.text == "provenance") {
            provenance.push_back(rest_of_line(*l));
        } else if (kw.text == "labels") {
            continue;
        } else if (kw.text == "order") {
            t.leq = read_bits(body.block(*l, n, n, "order", &names));
        } else if (kw.text == "mult") {
            for (const auto* row : body.block(*l, n, n, "mult", &names)) {
                std::vector<std::size_t> r;
                for (const auto& tok : row->tokens) r.push_back(names.resolve(tok, "element"));
                t.mult.push_back(std::move(r));
            }
        } else if (kw.text == "unit") {
            if (l->tokens.size() != 2) fail_after(*l, "unit line needs exactly one element");
            t.unit = names.resolve(l->tokens[1], "element");
        } else {
            if (l->tokens.size() < n + 1) {
                fail_after(*l, kw.text + " line has " + std::to_string(l->tokens.size() - 1) + " entries, expected " +
                                   std::to_string(n));
            }
            if (l->tokens.size() > n + 1) fail_at(l->tokens[n + 1], kw.text + " line has too many entries");
            std::vector<std::size_t> v;
            for (std::size_t i = 1; i <= n; ++i) v.push_back(names.resolve(l->tokens[i], "element"));
            (kw.text == "tilde" ? t.tilde : kw.text == "minus" ? t.minus : t.neg) = std::move(v);
        }
    }
    for (const char* required : {"order", "mult", "tilde", "minus", "neg", "unit"}) {
        if (!seen.contains(required)) fail_after(s.lines.back(), std::string("algebra is missing its '") + required + "' entry");
    }
    for (std::size_t i = 0; i < provenance.size(); ++i) t.provenance += (i ? "\n" : "") + provenance[i];
    return FiniteDqRA(std::move(t));
}

inline RelStructure parse_structure_section(const Section& s) {
    const auto& h = s.header();
    if (h.tokens.size() != 3) fail_after(h, "header must be 'struct <name> <size>'");
    const std::string name = h.tokens[1].text;
    const std::size_t n = parse_count(h.tokens[2]);
    if (n == 0 || n > BinRel::max_points) fail_at(h.tokens[2], "carrier size must be between 1 and 64");

    const std::set<std::string> keywords{"version", "labels", "leq", "E", "alpha", "beta"};
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < s.lines.size(); ++i) {
        if (s.lines[i].tokens[0].text == "labels") labels = read_labels(s.lines[i], n, keywords);
    }
    const NameTable names(n, labels);

    std::set<std::string> seen;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<bool>> eq;
    Permutation alpha;
    Permutation beta;
    BodyReader body(s, keywords);
    while (const Line* l = body.next()) {
        const auto& kw = l->tokens[0];
        if (!keywords.contains(kw.text)) fail_at(kw, "unexpected '" + kw.text + "' in structure section");
        if (!seen.insert(kw.text).second) fail_at(kw, "duplicate '" + kw.text + "' entry");
        if (kw.text == "version") {
            check_version(*l);
        } else if (kw.text == "labels") {
            continue;
        } else if (kw.text == "leq") {
            leq = read_bits(body.block(*l, n, n, "leq", &names));
        } else if (kw.text == "E") {
            eq = read_bits(body.block(*l, n, n, "E", &names));
        } else {
            if (l->tokens.size() < n + 1) fail_after(*l, kw.text + " needs one image per point");
            if (l->tokens.size() > n + 1) fail_at(l->tokens[n + 1], kw.text + " line has too many entries");
            Permutation f;
            for (std::size_t i = 1; i <= n; ++i) f.push_back(names.resolve(l->tokens[i], "point"));
            (kw.text == "alpha" ? alpha : beta) = std::move(f);
        }
    }
    for (const char* required : {"leq", "E", "alpha", "beta"}) {
        if (!seen.contains(required)) fail_after(s.lines.back(), std::string("structure is missing its '") + required + "' entry");
    }
    auto to_rel = [n](const std::vector<std::vector<bool>>& bits) {
        BinRel r(n);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (bits[x][y]) r.insert(x, y);
            }
        }
        return r;
    };
    return RelStructure(name, to_rel(leq), to_rel(eq), alpha, beta, labels);
}

/// An assignment as written, before names are resolved against an algebra and
/// a structure.
struct RawAssignment {
    std::string name;
    struct Entry {
        Token element;
        std::vector<std::pair<Token, Token>> pairs;
    };
    std::vector<Entry> entries;
    std::size_t header_line = 0;
};

inline RawAssignment parse_assignment_section(const Section& s) {
    const auto& h = s.header();
    if (h.tokens.size() != 2) fail_after(h, "header must be 'assign <name>'");
    RawAssignment out;
    out.name = h.tokens[1].text;
    out.header_line = h.number;
    for (std::size_t li = 1; li < s.lines.size(); ++li) {
        const Line& l = s.lines[li];
        // re-scan the raw text: element ':' '{' (a,b), ... '}'
        const std::string& raw = l.raw;
        std::size_t i = 0;
        auto col = [&](std::size_t at) { return at + 1; };
        auto skip_ws = [&]() {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        };
        auto ident = [&](const char* what) -> Token {
            skip_ws();
            const std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
                   std::string_view(":{}(),#").find(raw[i]) == std::string_view::npos) {
                ++i;
            }
            if (i == start) throw ParseError(l.number, col(start), std::string("expected ") + what);
            return {raw.substr(start, i - start), l.number, col(start)};
        };
        auto expect = [&](char c) {
            skip_ws();
            if (i >= raw.size() || raw[i] != c) throw ParseError(l.number, col(i), std::string("expected '") + c + "'");
            ++i;
        };
        RawAssignment::Entry e;
        e.element = ident("element name");
        expect(':');
        expect('{');
        skip_ws();
        if (i < raw.size() && raw[i] == '}') {
            ++i;
        } else {
            while (true) {
                expect('(');
                auto a = ident("point name");
                expect(',');
                auto b = ident("point name");
                expect(')');
                e.pairs.emplace_back(std::move(a), std::move(b));
                skip_ws();
                if (i < raw.size() && raw[i] == ',') {
                    ++i;
                    continue;
                }
                expect('}');
                break;
            }
        }
        skip_ws();
        if (i < raw.size() && raw[i] != '#') throw ParseError(l.number, col(i), "unexpected text after '}'");
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace text

/// All sections of one file, in order of appearance.
struct Document {
    std::vector<FiniteDqRA> algebras;
    std::vector<RelStructure> structures;
    std::vector<text::RawAssignment> assignments;
    std::vector<text::Section> sketches;
};

inline Document parse_document(std::string_view input) {
    Document d;
    for (const auto& s : text::split_sections(input)) {
        if (s.kind == "dqra") {
            d.algebras.push_back(text::parse_algebra_section(s));
        } else if (s.kind == "struct") {
            d.structures.push_back(text::parse_structure_section(s));
        } else if (s.kind == "assign") {
            d.assignments.push_back(text::parse_assignment_section(s));
        } else {
            d.sketches.push_back(s);
        }
    }
    return d;
}

inline FiniteDqRA parse_algebra(std::string_view input) {
    auto d = parse_document(input);
    if (d.algebras.empty()) throw ParseError(1, 1, "no 'dqra' section found");
    return std::move(d.algebras.front());
}

inline RelStructure parse_structure(std::string_view input) {
    auto d = parse_document(input);
    if (d.structures.empty()) throw ParseError(1, 1, "no 'struct' section found");
    return std::move(d.structures.front());
}

/// Resolves element and point names. Every element must be assigned exactly once.
inline Embedding resolve_assignment(const text::RawAssignment& raw, const FiniteDqRA& A, const RelStructure& S) {
    const text::NameTable elements(A.size(), A.labels());
    const text::NameTable points(S.points(), S.labels);
    std::vector<std::optional<BinRel>> images(A.size());
    for (const auto& e : raw.entries) {
        const auto a = elements.resolve(e.element, "element");
        if (images[a]) text::fail_at(e.element, "element '" + e.element.text + "' assigned twice");
        BinRel r(S.points());
        for (const auto& [x, y] : e.pairs) r.insert(points.resolve(x, "point"), points.resolve(y, "point"));
        images[a] = std::move(r);
    }
    std::vector<BinRel> assignment;
    for (std::size_t a = 0; a < A.size(); ++a) {
        if (!images[a]) {
            throw ParseError(raw.header_line, 1, "assignment '" + raw.name + "' has no entry for element '" +
                                                     elements.name(a) + "'");
        }
        assignment.push_back(std::move(*images[a]));
    }
    return Embedding{A, S, std::move(assignment)};
}

inline std::string emit_algebra(const FiniteDqRA& A) {
    std::ostringstream os;
    const auto n = A.size();
    os << "dqra " << (A.name().empty() ? "unnamed" : A.name()) << ' ' << n << '\n';
    os << "version " << format_version << '\n';
    if (!A.provenance().empty()) {
        std::istringstream lines(A.provenance());
        for (std::string l; std::getline(lines, l);) os << "provenance " << l << '\n';
    }
    if (A.has_labels()) {
        os << "labels";
        for (const auto& l : A.labels()) os << ' ' << l;
        os << '\n';
    }
    os << "order\n";
    for (auto a : A.elements()) {
        for (auto b : A.elements()) os << (b.index() ? " " : "") << (A.leq(a, b) ? 1 : 0);
        os << '\n';
    }
    os << "mult\n";
    for (auto a : A.elements()) {
        for (auto b : A.elements()) os << (b.index() ? " " : "") << A.label(A.mul(a, b));
        os << '\n';
    }
    auto unary = [&](const char* kw, auto&& f) {
        os << kw;
        for (auto a : A.elements()) os << ' ' << A.label(f(a));
        os << '\n';
    };
    unary("tilde", [&](ElementId a) { return A.tilde(a); });
    unary("minus", [&](ElementId a) { return A.minus(a); });
    unary("neg", [&](ElementId a) { return A.neg(a); });
    os << "unit " << A.label(A.unit()) << '\n';
    return os.str();
}

inline std::string emit_structure(const RelStructure& S) {
    std::ostringstream os;
    const auto n = S.points();
    os << "struct " << (S.name.empty() ? "unnamed" : S.name) << ' ' << n << '\n';
    os << "version " << format_version << '\n';
    if (!S.labels.empty()) {
        os << "labels";
        for (const auto& l : S.labels) os << ' ' << l;
        os << '\n';
    }
    auto block = [&](const char* kw, const BinRel& r) {
        os << kw << '\n';
        for (Point x = 0; x < n; ++x) {
            for (Point y = 0; y < n; ++y) os << (y ? " " : "") << (r.contains(x, y) ? 1 : 0);
            os << '\n';
        }
    };
    block("leq", S.leq);
    block("E", S.equiv);
    os << "alpha";
    for (auto p : S.alpha) os << ' ' << S.label(p);
    os << "\nbeta";
    for (auto p : S.beta) os << ' ' << S.label(p);
    os << '\n';
    return os.str();
}

inline std::string emit_assignment(const Embedding& e, const std::string& name) {
    std::ostringstream os;
    os << "assign " << name << '\n';
    for (auto a : e.algebra.elements()) {
        os << e.algebra.label(a) << ": {";
        bool first = true;
        for (auto [x, y] : e[a].pairs()) {
            os << (first ? "" : ",") << '(' << e.structure.label(x) << ',' << e.structure.label(y) << ')';
            first = false;
        }
        os << "}\n";
    }
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qra
