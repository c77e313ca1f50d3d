#pragma once

#include <cassert>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "ofa/charset.hpp"

namespace ofa {

enum class AstKind { char_set, concat, alt, star, plus, epsilon };

// Regex syntax tree. Canonical form: concat/alt children are >= 2, never of
// the parent's own kind (nested lists are flattened), and char sets are
// non-empty normalized range lists.
struct Ast {
    AstKind kind = AstKind::epsilon;
    CharSet set;                // char_set only
    std::vector<Ast> children;  // concat/alt: >=2, star/plus: exactly 1

    friend bool operator==(const Ast&, const Ast&) = default;
};

inline Ast ast_epsilon() { return Ast{AstKind::epsilon, {}, {}}; }

inline Ast ast_charset(CharSet s) {
    assert(!s.empty());
    return Ast{AstKind::char_set, std::move(s), {}};
}

inline Ast ast_literal(char32_t cp) { return ast_charset(CharSet(cp)); }

inline Ast ast_star(Ast child) { return Ast{AstKind::star, {}, {std::move(child)}}; }

inline Ast ast_plus(Ast child) { return Ast{AstKind::plus, {}, {std::move(child)}}; }

// Builds an n-ary list node, flattening same-kind children and collapsing
// singleton lists to the child itself.
inline Ast ast_list(AstKind kind, std::vector<Ast> children) {
    assert(kind == AstKind::concat || kind == AstKind::alt);
    std::vector<Ast> flat;
    flat.reserve(children.size());
    for (auto& c : children) {
        if (c.kind == kind) {
            for (auto& gc : c.children) flat.push_back(std::move(gc));
        } else {
            flat.push_back(std::move(c));
        }
    }
    assert(!flat.empty());
    if (flat.size() == 1) return std::move(flat.front());
    return Ast{kind, {}, std::move(flat)};
}

inline Ast ast_concat(std::vector<Ast> children) { return ast_list(AstKind::concat, std::move(children)); }
inline Ast ast_alt(std::vector<Ast> children) { return ast_list(AstKind::alt, std::move(children)); }

// Rewrites e into .any.* e so DFA runs report every position where some
// suffix of the consumed input matches e. No simplification: wrapping an
// already wrapped tree stacks a second leading star.
inline Ast wrap_for_end_positions(const Ast& e) {
    std::vector<Ast> parts;
    parts.push_back(ast_star(ast_charset(charset_full())));
    if (e.kind == AstKind::concat) {
        for (const auto& c : e.children) parts.push_back(c);
    } else {
        parts.push_back(e);
    }
    return Ast{AstKind::concat, {}, std::move(parts)};
}

namespace detail {

inline void append_class_atom(std::string& out, char32_t cp);

inline void append_pattern_cp(std::string& out, char32_t cp) {
    switch (cp) {
        case U'\\': case U'(': case U')': case U'[': case U']':
        case U'|': case U'*': case U'+': case U'?': case U'.':
            out.push_back('\\');
            out.push_back(static_cast<char>(cp));
            return;
        case U'\n': out += "\\n"; return;
        case U'\r': out += "\\r"; return;
        case U'\t': out += "\\t"; return;
        default: break;
    }
    if (cp >= 0x20 && cp < 0x7F) {
        out.push_back(static_cast<char>(cp));
        return;
    }
    char buf[16];
    if (cp <= 0xFFFF) {
        std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(cp));
    } else {
        std::snprintf(buf, sizeof buf, "\\u{%x}", static_cast<unsigned>(cp));
    }
    out += buf;
}

inline void append_class_atom(std::string& out, char32_t cp) {
    switch (cp) {
        case U'\\': case U']': case U'^': case U'-':
            out.push_back('\\');
            out.push_back(static_cast<char>(cp));
            return;
        case U'\n': out += "\\n"; return;
        case U'\r': out += "\\r"; return;
        case U'\t': out += "\\t"; return;
        default: break;
    }
    if (cp >= 0x20 && cp < 0x7F) {
        out.push_back(static_cast<char>(cp));
        return;
    }
    char buf[16];
    if (cp <= 0xFFFF) {
        std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(cp));
    } else {
        std::snprintf(buf, sizeof buf, "\\u{%x}", static_cast<unsigned>(cp));
    }
    out += buf;
}

inline void print_ast(std::string& out, const Ast& a, const Ast* parent) {
    const bool in_concat = parent && parent->kind == AstKind::concat;
    const bool in_postfix = parent && (parent->kind == AstKind::star || parent->kind == AstKind::plus);
    switch (a.kind) {
        case AstKind::epsilon:
            out += "\\e";
            return;
        case AstKind::char_set: {
            const auto& rs = a.set.ranges;
            if (rs.size() == 1 && rs[0].lo == rs[0].hi) {
                append_pattern_cp(out, rs[0].lo);
                return;
            }
            out.push_back('[');
            for (const auto& r : rs) {
                append_class_atom(out, r.lo);
                if (r.hi > r.lo) {
                    if (r.hi > r.lo + 1) out.push_back('-');
                    append_class_atom(out, r.hi);
                }
            }
            out.push_back(']');
            return;
        }
        case AstKind::star:
        case AstKind::plus:
            print_ast(out, a.children.front(), &a);
            out.push_back(a.kind == AstKind::star ? '*' : '+');
            return;
        case AstKind::concat: {
            const bool wrap = in_postfix;
            if (wrap) out.push_back('(');
            for (const auto& c : a.children) print_ast(out, c, &a);
            if (wrap) out.push_back(')');
            return;
        }
        case AstKind::alt: {
            const bool wrap = in_concat || in_postfix;
            if (wrap) out.push_back('(');
            bool first = true;
            for (const auto& c : a.children) {
                if (!first) out.push_back('|');
                first = false;
                print_ast(out, c, &a);
            }
            if (wrap) out.push_back(')');
            return;
        }
    }
}

} // namespace detail

// Canonical printable form; parse_pattern(to_pattern(a)) reproduces a.
inline std::string to_pattern(const Ast& a) {
    std::string out;
    detail::print_ast(out, a, nullptr);
    return out;
}

} // namespace ofa
