#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "ofa/automaton.hpp"

namespace ofa {

enum class format_error_kind { version_mismatch, truncated, inconsistent };

struct format_error : std::runtime_error {
    format_error_kind kind;
    format_error(format_error_kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

// Text form, line oriented:
//   OFA 1
//   classes <class_count>
//   range <lo> <hi> <class>          code points in lowercase hex
//   states <state_count> start <id>
//   finals <id>...
//   phi <id> <value>                 for start and finals, ascending
//   look <dfa_state> <lookahead>     diagnostic, ascending
//   t <from> <class> <to> <theta>    row-major, one per table slot
// All other values decimal. Emission is canonical, so equal automata
// serialize to identical bytes.
inline std::string serialize_ofa(const Ofa& ofa) {
    std::string out;
    char buf[96];
    out += "OFA 1\n";
    std::snprintf(buf, sizeof buf, "classes %u\n", unsigned(ofa.classes.class_count));
    out += buf;
    for (const auto& r : ofa.classes.ranges) {
        std::snprintf(buf, sizeof buf, "range %x %x %u\n", unsigned(r.lo), unsigned(r.hi), unsigned(r.cls));
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "states %u start %u\n", ofa.state_count, ofa.start);
    out += buf;
    out += "finals";
    for (auto f : ofa.finals) {
        std::snprintf(buf, sizeof buf, " %u", f);
        out += buf;
    }
    out += '\n';
    std::vector<std::uint32_t> phi_ids{ofa.start};
    for (auto f : ofa.finals)
        if (f != ofa.start) phi_ids.push_back(f);
    std::sort(phi_ids.begin(), phi_ids.end());
    for (auto q : phi_ids) {
        std::snprintf(buf, sizeof buf, "phi %u %d\n", q, ofa.phi[q]);
        out += buf;
    }
    for (const auto& [q, la] : ofa.look) {
        std::snprintf(buf, sizeof buf, "look %u %u\n", q, la);
        out += buf;
    }
    for (std::uint32_t s = 0; s < ofa.state_count; ++s) {
        for (std::uint16_t c = 0; c < ofa.class_count; ++c) {
            const std::size_t row = std::size_t(s) * ofa.class_count + c;
            std::snprintf(buf, sizeof buf, "t %u %u %u %d\n", s, unsigned(c), ofa.delta[row], ofa.theta[row]);
            out += buf;
        }
    }
    return out;
}

namespace detail {

class OfaReader {
  public:
    explicit OfaReader(std::string_view text) : text_(text) {}

    Ofa read() {
        Ofa ofa;
        // header
        expect_word("OFA", format_error_kind::inconsistent, "not an OFA file");
        const auto ver = word("version");
        if (ver != "1") throw format_error(format_error_kind::version_mismatch, "unsupported OFA version " + std::string(ver));
        end_line();

        expect_word("classes", format_error_kind::inconsistent, "expected 'classes'");
        const auto k = number<std::uint32_t>("class count");
        if (k == 0 || k > 0xFFFF) fail("class count out of range");
        ofa.classes.class_count = static_cast<std::uint16_t>(k);
        ofa.class_count = static_cast<std::uint16_t>(k);
        end_line();

        char32_t next_lo = 0;
        bool space_covered = false;
        std::vector<bool> cls_seen(k, false);
        while (peek_word() == "range") {
            word("range");
            const auto lo = hex_number("range low");
            const auto hi = hex_number("range high");
            const auto cls = number<std::uint32_t>("range class");
            end_line();
            if (space_covered || lo != next_lo || hi < lo || hi > max_code_point || cls >= k)
                fail("malformed class range");
            ofa.classes.ranges.push_back({lo, hi, static_cast<std::uint16_t>(cls)});
            cls_seen[cls] = true;
            if (hi == max_code_point)
                space_covered = true;
            else
                next_lo = hi + 1;
        }
        if (!space_covered) fail("class ranges do not cover the code-point space");
        for (std::uint32_t c = 0; c < k; ++c)
            if (!cls_seen[c]) fail("class id " + std::to_string(c) + " has no range");
        ofa.classes.build_fast_table();

        expect_word("states", format_error_kind::inconsistent, "expected 'states'");
        ofa.state_count = number<std::uint32_t>("state count");
        expect_word("start", format_error_kind::inconsistent, "expected 'start'");
        ofa.start = number<std::uint32_t>("start state");
        end_line();
        if (ofa.state_count == 0 || ofa.start >= ofa.state_count) fail("start state out of range");

        expect_word("finals", format_error_kind::inconsistent, "expected 'finals'");
        ofa.is_final.assign(ofa.state_count, 0);
        while (!at_line_end()) {
            const auto f = number<std::uint32_t>("final state");
            if (f >= ofa.state_count || (!ofa.finals.empty() && f <= ofa.finals.back())) fail("bad finals list");
            ofa.finals.push_back(f);
            ofa.is_final[f] = 1;
        }
        end_line();

        std::vector<std::uint32_t> phi_ids{ofa.start};
        for (auto f : ofa.finals)
            if (f != ofa.start) phi_ids.push_back(f);
        std::sort(phi_ids.begin(), phi_ids.end());
        ofa.phi.assign(ofa.state_count, 0);
        for (auto q : phi_ids) {
            expect_word("phi", format_error_kind::inconsistent, "expected 'phi'");
            const auto id = number<std::uint32_t>("phi state");
            const auto v = number<std::int32_t>("phi value");
            end_line();
            if (id != q || v < 0) fail("phi entry out of order or negative");
            ofa.phi[id] = v;
        }

        std::uint32_t look_q = 0;
        while (peek_word() == "look") {
            word("look");
            const auto q = number<std::uint32_t>("look state");
            const auto la = number<std::uint32_t>("lookahead");
            end_line();
            if (q != look_q || la == 0) fail("look entry out of order or zero");
            ofa.look.emplace_back(q, la);
            ++look_q;
        }

        ofa.delta.assign(std::size_t(ofa.state_count) * k, 0);
        ofa.theta.assign(std::size_t(ofa.state_count) * k, 0);
        for (std::uint32_t s = 0; s < ofa.state_count; ++s) {
            for (std::uint32_t c = 0; c < k; ++c) {
                expect_word("t", format_error_kind::inconsistent, "expected transition line");
                const auto from = number<std::uint32_t>("transition source");
                const auto cls = number<std::uint32_t>("transition class");
                const auto to = number<std::uint32_t>("transition target");
                const auto th = number<std::int32_t>("theta");
                end_line();
                if (from != s || cls != c || to >= ofa.state_count || th == 0 || th < -1)
                    fail("malformed transition");
                const std::size_t row = std::size_t(s) * k + c;
                ofa.delta[row] = to;
                ofa.theta[row] = th;
            }
        }
        skip_blank();
        if (pos_ != text_.size()) fail("trailing data after transition table");
        return ofa;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw format_error(format_error_kind::inconsistent, msg);
    }
    [[noreturn]] void eof(const std::string& what) const {
        throw format_error(format_error_kind::truncated, "unexpected end of input reading " + what);
    }

    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\r')) ++pos_;
    }
    void skip_blank() {
        while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == ' ' || text_[pos_] == '\r')) ++pos_;
    }
    bool at_line_end() {
        skip_spaces();
        return pos_ >= text_.size() || text_[pos_] == '\n';
    }
    void end_line() {
        skip_spaces();
        if (pos_ >= text_.size()) return; // final newline optional
        if (text_[pos_] != '\n') fail("unexpected token at end of line");
        ++pos_;
    }

    std::string_view word(const char* what) {
        skip_spaces();
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) eof(what);
        return text_.substr(start, pos_ - start);
    }

    std::string_view peek_word() {
        const auto save = pos_;
        skip_blank();
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const auto w = text_.substr(start, pos_ - start);
        pos_ = save;
        return w;
    }

    void expect_word(std::string_view expected, format_error_kind kind, const char* msg) {
        skip_blank();
        if (pos_ >= text_.size()) eof(std::string(expected));
        const auto w = word(std::string(expected).c_str());
        if (w != expected) throw format_error(kind, std::string(msg) + ", found '" + std::string(w) + "'");
    }

    template <typename T>
    T number(const char* what) {
        const auto w = word(what);
        T value{};
        const auto res = std::from_chars(w.data(), w.data() + w.size(), value, 10);
        if (res.ec != std::errc{} || res.ptr != w.data() + w.size()) fail(std::string("bad number for ") + what);
        return value;
    }

    char32_t hex_number(const char* what) {
        const auto w = word(what);
        std::uint32_t value{};
        const auto res = std::from_chars(w.data(), w.data() + w.size(), value, 16);
        if (res.ec != std::errc{} || res.ptr != w.data() + w.size()) fail(std::string("bad hex number for ") + what);
        return static_cast<char32_t>(value);
    }
};

} // namespace detail

// Inverse of serialize_ofa. Header version other than 1 is a version
// mismatch; missing input is truncation; anything structurally wrong
// (bad ranges, ids out of range, misordered tables) is an inconsistency.
inline Ofa deserialize_ofa(std::string_view text) {
    return detail::OfaReader(text).read();
}

} // namespace ofa
