#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ofa/ast.hpp"
#include "ofa/utf8.hpp"

namespace ofa {

struct parse_error : std::runtime_error {
    std::size_t offset; // byte offset into the pattern
    parse_error(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}
};

namespace detail {

// Recursive-descent parser over the raw UTF-8 bytes; offsets in errors are
// byte offsets into the original pattern string.
class PatternParser {
  public:
    explicit PatternParser(std::string_view src) : src_(src) {}

    Ast parse() {
        if (src_.empty()) fail("empty pattern; use \\e to match the empty string", 0);
        Ast a = parse_alt();
        if (pos_ < src_.size()) fail("unexpected ')'", pos_);
        return a;
    }

  private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t off) const { throw parse_error(msg, off); }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    char32_t next_cp() {
        try {
            const auto b0 = static_cast<unsigned char>(src_[pos_]);
            std::size_t len = b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
            auto cp = decode_utf8(src_.substr(pos_, len));
            pos_ += len;
            return cp[0];
        } catch (const utf8_error&) {
            fail("invalid UTF-8 in pattern", pos_);
        }
    }

    Ast parse_alt() {
        std::vector<Ast> branches;
        branches.push_back(parse_concat());
        while (!eof() && peek() == '|') {
            ++pos_;
            branches.push_back(parse_concat());
        }
        return ast_alt(std::move(branches));
    }

    bool at_concat_end() const { return eof() || peek() == '|' || peek() == ')'; }

    Ast parse_concat() {
        if (at_concat_end()) fail("empty alternative; use \\e to match the empty string", pos_);
        std::vector<Ast> parts;
        while (!at_concat_end()) parts.push_back(parse_repeat());
        return ast_concat(std::move(parts));
    }

    Ast parse_repeat() {
        Ast a = parse_atom();
        while (!eof()) {
            const char c = peek();
            if (c == '*') {
                a = ast_star(std::move(a));
            } else if (c == '+') {
                a = ast_plus(std::move(a));
            } else if (c == '?') {
                a = ast_alt({std::move(a), ast_epsilon()});
            } else {
                break;
            }
            ++pos_;
        }
        return a;
    }

    Ast parse_atom() {
        const std::size_t start = pos_;
        const char c = peek();
        switch (c) {
            case '(': {
                ++pos_;
                Ast a = parse_alt();
                if (eof() || peek() != ')') fail("unclosed group", start);
                ++pos_;
                return a;
            }
            case '[':
                return ast_charset(parse_class());
            case '.':
                ++pos_;
                return ast_charset(charset_any_except_newline());
            case '\\': {
                bool is_epsilon = false;
                const char32_t cp = parse_escape(false, is_epsilon);
                return is_epsilon ? ast_epsilon() : ast_literal(cp);
            }
            case '*': case '+': case '?':
                fail("nothing to repeat", pos_);
            case ')': case '|':
                fail("empty alternative; use \\e to match the empty string", pos_);
            default:
                return ast_literal(next_cp());
        }
    }

    // in_class selects the escape repertoire; \e (epsilon) exists only at
    // expression level.
    char32_t parse_escape(bool in_class, bool& is_epsilon) {
        const std::size_t start = pos_;
        ++pos_; // backslash
        if (eof()) fail("dangling backslash", start);
        const char c = peek();
        switch (c) {
            case 'n': ++pos_; return U'\n';
            case 'r': ++pos_; return U'\r';
            case 't': ++pos_; return U'\t';
            case 'e':
                if (in_class) fail("\\e is not allowed inside a character class", start);
                ++pos_;
                is_epsilon = true;
                return 0;
            case 'u': {
                ++pos_;
                if (!eof() && peek() == '{') {
                    ++pos_;
                    char32_t cp = 0;
                    std::size_t digits = 0;
                    while (!eof() && peek() != '}') {
                        const int d = hex_digit(peek());
                        if (d < 0) fail("invalid hex digit in \\u{...}", pos_);
                        cp = cp * 16 + static_cast<char32_t>(d);
                        if (++digits > 6) fail("\\u{...} escape too long", start);
                        ++pos_;
                    }
                    if (eof()) fail("unterminated \\u{...} escape", start);
                    ++pos_; // '}'
                    if (digits == 0) fail("empty \\u{...} escape", start);
                    if (cp > max_code_point) fail("code point out of range", start);
                    return cp;
                }
                char32_t cp = 0;
                for (int k = 0; k < 4; ++k) {
                    if (eof() || hex_digit(peek()) < 0) fail("\\u expects four hex digits", pos_);
                    cp = cp * 16 + static_cast<char32_t>(hex_digit(peek()));
                    ++pos_;
                }
                return cp;
            }
            default:
                return next_cp(); // escaped literal, e.g. \* \[ \\ \-
        }
    }

    static int hex_digit(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    // Caller has seen '['. Supports leading '^' negation and lo-hi ranges.
    CharSet parse_class() {
        const std::size_t start = pos_;
        ++pos_;
        bool negate = false;
        if (!eof() && peek() == '^') {
            negate = true;
            ++pos_;
        }
        CharSet set;
        while (true) {
            if (eof()) fail("unclosed character class", start);
            if (peek() == ']') {
                ++pos_;
                break;
            }
            const char32_t lo = parse_class_atom();
            if (!eof() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
                const std::size_t dash = pos_;
                ++pos_;
                const char32_t hi = parse_class_atom();
                if (lo > hi) fail("inverted range in character class", dash);
                set.add(lo, hi);
            } else {
                set.add(lo, lo);
            }
        }
        if (set.empty()) fail("empty character class", start);
        if (negate) {
            set = set.complement();
            if (set.empty()) fail("negated class matches nothing", start);
        }
        return set;
    }

    char32_t parse_class_atom() {
        if (peek() == '\\') {
            bool eps = false;
            return parse_escape(true, eps);
        }
        return next_cp();
    }
};

} // namespace detail

// Parses the pattern grammar: literals, escapes (\n \r \t \\ \uXXXX \u{...}
// \e and escaped metacharacters), character classes with ranges and ^
// negation, grouping, alternation, * + ?, and "." (any except newline).
// e? is represented as (e|\e). Errors carry the byte offset.
inline Ast parse_pattern(std::string_view pattern) {
    return detail::PatternParser(pattern).parse();
}

} // namespace ofa
