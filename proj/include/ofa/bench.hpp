#pragma once

#include <chrono>
#include <cstdint>
#include <future>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ofa/pipeline.hpp"
#include "ofa/utf8.hpp"

namespace ofa {

// One benchmark row. Fractions are 0..1; times are seconds (best of N runs);
// space counts 32-bit words of transition/offset tables. error is empty on
// success, otherwise the row's other fields are not meaningful.
struct BenchRecord {
    std::string pattern_id;
    std::uint32_t class_count = 0;
    std::uint32_t max_lookahead = 0;
    double pct_positions_matched = 0.0;
    double ofa_pct_chars_processed = 0.0;
    double forward_elapsed = 0.0;
    double ofa_elapsed = 0.0;
    std::uint64_t ofa_space_words = 0;
    std::uint64_t forward_space_words = 0;
    std::string error;
};

inline constexpr const char* bench_csv_header =
    "pattern_id,class_count,max_lookahead,pct_positions_matched,ofa_pct_chars_processed,"
    "forward_elapsed,ofa_elapsed,ofa_space_words,forward_space_words,error";

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

inline std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline std::string bench_to_csv(const std::vector<BenchRecord>& records) {
    std::string out = bench_csv_header;
    out += '\n';
    for (const auto& r : records) {
        out += detail::csv_escape(r.pattern_id);
        out += ',' + std::to_string(r.class_count);
        out += ',' + std::to_string(r.max_lookahead);
        out += ',' + detail::csv_double(r.pct_positions_matched);
        out += ',' + detail::csv_double(r.ofa_pct_chars_processed);
        out += ',' + detail::csv_double(r.forward_elapsed);
        out += ',' + detail::csv_double(r.ofa_elapsed);
        out += ',' + std::to_string(r.ofa_space_words);
        out += ',' + std::to_string(r.forward_space_words);
        out += ',' + detail::csv_escape(r.error);
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace detail

inline std::vector<BenchRecord> parse_bench_csv(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::string line;
    std::vector<BenchRecord> out;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 10) throw std::runtime_error("bad benchmark CSV row: " + line);
        BenchRecord r;
        r.pattern_id = f[0];
        r.class_count = static_cast<std::uint32_t>(std::stoul(f[1]));
        r.max_lookahead = static_cast<std::uint32_t>(std::stoul(f[2]));
        r.pct_positions_matched = std::stod(f[3]);
        r.ofa_pct_chars_processed = std::stod(f[4]);
        r.forward_elapsed = std::stod(f[5]);
        r.ofa_elapsed = std::stod(f[6]);
        r.ofa_space_words = std::stoull(f[7]);
        r.forward_space_words = std::stoull(f[8]);
        r.error = f[9];
        out.push_back(std::move(r));
    }
    return out;
}

// Patterns file: one "id<TAB>pattern" per line; blank lines and lines
// starting with '#' are skipped.
struct BenchPattern {
    std::string id;
    std::string pattern;
};

inline std::vector<BenchPattern> parse_patterns_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<BenchPattern> out;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw std::runtime_error("patterns file line " + std::to_string(lineno) + ": expected id<TAB>pattern");
        out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return out;
}

struct BenchOptions {
    std::uint32_t repetitions = 3; // timed runs per engine; best is kept
    BudgetConfig budget{};
    bool parallel_compile = false; // compilation only; timing is sequential
};

// Times the forward scanner against the skipping scanner on one corpus.
// Correctness gates timing: an automaton whose positions disagree with the
// forward scan is recorded as an error row, not timed. A warm-up run per
// engine is excluded from timing.
inline std::vector<BenchRecord> run_bench(const std::vector<BenchPattern>& patterns, std::u32string_view corpus,
                                          const BenchOptions& opt = {}) {
    using clock = std::chrono::steady_clock;

    std::vector<std::optional<Compiled>> compiled(patterns.size());
    std::vector<std::string> compile_errors(patterns.size());
    auto compile_one = [&](std::size_t i) {
        try {
            CompileOptions copt;
            copt.mode = MatchMode::end_positions;
            copt.budget = opt.budget;
            compiled[i].emplace(compile_pattern(patterns[i].pattern, copt));
        } catch (const std::exception& e) {
            compile_errors[i] = e.what();
        }
    };
    if (opt.parallel_compile) {
        std::vector<std::future<void>> futs;
        futs.reserve(patterns.size());
        for (std::size_t i = 0; i < patterns.size(); ++i)
            futs.push_back(std::async(std::launch::async, compile_one, i));
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t i = 0; i < patterns.size(); ++i) compile_one(i);
    }

    std::vector<BenchRecord> out;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        BenchRecord rec;
        rec.pattern_id = patterns[i].id;
        if (!compile_errors[i].empty()) {
            rec.error = compile_errors[i];
            out.push_back(std::move(rec));
            continue;
        }
        const Compiled& c = *compiled[i];
        rec.class_count = c.classes.class_count;
        for (const auto& [q, la] : c.ofa.look) rec.max_lookahead = std::max(rec.max_lookahead, la);
        rec.forward_space_words = std::uint64_t(c.dfa.state_count) * c.dfa.class_count;
        rec.ofa_space_words = 2 * std::uint64_t(c.ofa.state_count) * c.ofa.class_count + 1 + c.ofa.finals.size();

        const MatchReport oracle = forward_scan(c.dfa, corpus);
        const MatchReport skip = match_using_ofa(c.ofa, corpus);
        if (oracle.positions != skip.positions) {
            rec.error = "oracle mismatch: forward scan and skip scan disagree";
            out.push_back(std::move(rec));
            continue;
        }
        const double len = static_cast<double>(corpus.size());
        rec.pct_positions_matched = len >= 0 ? double(oracle.positions.size()) / (len + 1.0) : 0.0;
        rec.ofa_pct_chars_processed = len > 0 ? double(skip.chars_read) / len : 0.0;

        double best_fwd = 1e300, best_ofa = 1e300;
        for (std::uint32_t r = 0; r < opt.repetitions; ++r) {
            const auto t0 = clock::now();
            const auto rep = forward_scan(c.dfa, corpus);
            const auto t1 = clock::now();
            if (rep.positions.size() != oracle.positions.size()) rec.error = "unstable forward scan";
            best_fwd = std::min(best_fwd, std::chrono::duration<double>(t1 - t0).count());
        }
        for (std::uint32_t r = 0; r < opt.repetitions; ++r) {
            const auto t0 = clock::now();
            const auto rep = match_using_ofa(c.ofa, corpus);
            const auto t1 = clock::now();
            if (rep.positions.size() != oracle.positions.size()) rec.error = "unstable skip scan";
            best_ofa = std::min(best_ofa, std::chrono::duration<double>(t1 - t0).count());
        }
        rec.forward_elapsed = best_fwd;
        rec.ofa_elapsed = best_ofa;
        out.push_back(std::move(rec));
    }
    return out;
}

enum class CorpusTransform { none, lowercase, strip_newlines };

// Prepares a benchmark corpus: applies the transform, then tiles the text
// until it reaches exactly target_bytes. The cut must land on a code-point
// boundary; for multi-byte tails that cannot meet the exact size, this
// throws instead of emitting a short corpus.
inline std::string make_corpus(std::string_view source, std::uint64_t target_bytes, CorpusTransform transform) {
    std::string base;
    base.reserve(source.size());
    for (char ch : source) {
        switch (transform) {
            case CorpusTransform::lowercase:
                base.push_back(ch >= 'A' && ch <= 'Z' ? char(ch - 'A' + 'a') : ch);
                break;
            case CorpusTransform::strip_newlines:
                if (ch != '\n' && ch != '\r') base.push_back(ch);
                break;
            case CorpusTransform::none:
                base.push_back(ch);
                break;
        }
    }
    if (base.empty()) throw std::runtime_error("make_corpus: empty source text");
    std::string out;
    out.reserve(target_bytes);
    while (out.size() + base.size() <= target_bytes) out += base;
    if (out.size() < target_bytes) {
        const std::size_t cut = target_bytes - out.size();
        // Refuse to split a UTF-8 sequence at the cut.
        if ((static_cast<unsigned char>(base[cut]) & 0xC0) == 0x80)
            throw std::runtime_error("make_corpus: target size splits a code point");
        out.append(base, 0, cut);
    }
    return out;
}

} // namespace ofa
