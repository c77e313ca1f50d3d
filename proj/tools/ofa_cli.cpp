// Command-line front end: compile patterns to offsetting automata, scan
// inputs with them, trace scans, benchmark against the forward scanner, and
// prepare corpora.
//
// Exit codes: 0 success, 1 usage, 2 pattern syntax, 3 resource budget,
// 4 I/O or file format, 5 oracle mismatch.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ofa/all.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_parse = 2;
constexpr int exit_budget = 3;
constexpr int exit_io = 4;
constexpr int exit_mismatch = 5;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("error reading " + path);
    return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot create " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw io_error("error writing " + path);
}

struct CompileFlags {
    std::string pattern;
    std::string mode = "end-positions";
    std::string alphabet = "unicode";
    ofa::BudgetConfig budget;
};

void add_compile_flags(CLI::App* cmd, CompileFlags& f, bool pattern_positional) {
    if (pattern_positional)
        cmd->add_option("pattern", f.pattern, "Pattern to compile")->required();
    else
        cmd->add_option("--pattern", f.pattern, "Compile this pattern instead of loading an automaton");
    cmd->add_option("--mode", f.mode, "Match mode: end-positions (default) or anchored")
        ->check(CLI::IsMember({"end-positions", "anchored"}));
    cmd->add_option("--alphabet", f.alphabet, "Alphabet: unicode (default) or pattern (classes only for pattern characters)")
        ->check(CLI::IsMember({"unicode", "pattern"}));
    cmd->add_option("--max-lookahead", f.budget.max_lookahead, "Lookahead growth limit (default 12)");
    cmd->add_option("--max-trie-nodes", f.budget.max_nodes_per_trie, "Per-trie node budget (default 2^20)");
    cmd->add_option("--dfa-cap", f.budget.dfa_state_cap, "Determinization state cap (default 2^20)");
}

ofa::Compiled compile_from_flags(const CompileFlags& f) {
    ofa::CompileOptions opt;
    opt.mode = f.mode == "anchored" ? ofa::MatchMode::anchored : ofa::MatchMode::end_positions;
    opt.alphabet = f.alphabet == "pattern" ? ofa::AlphabetMode::pattern_only : ofa::AlphabetMode::full;
    opt.budget = f.budget;
    return ofa::compile_pattern(f.pattern, opt);
}

void print_compile_summary(const ofa::Compiled& c) {
    std::cout << "classes " << c.classes.class_count << "\n";
    std::cout << "dfa-states " << c.dfa.state_count << "\n";
    std::cout << "ofa-states " << c.ofa.state_count << "\n";
    std::cout << "lookaheads";
    for (const auto& [q, la] : c.ofa.look) std::cout << ' ' << q << ':' << la;
    std::cout << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Skip-ahead regular expression scanning with offsetting automata"};
    app.require_subcommand(1);

    // compile
    auto* compile = app.add_subcommand("compile", "Compile a pattern and save the automaton");
    CompileFlags cflags;
    add_compile_flags(compile, cflags, true);
    std::string compile_out;
    compile->add_option("-o,--output", compile_out, "Write the automaton to this file");

    // find
    auto* find = app.add_subcommand("find", "Report match end positions in a file");
    CompileFlags fflags;
    add_compile_flags(find, fflags, false);
    std::string find_automaton, find_input;
    bool find_stats = false, find_trace = false, find_oracle = false;
    find->add_option("--automaton", find_automaton, "Load a compiled automaton");
    find->add_option("input", find_input, "Input file to scan")->required();
    find->add_flag("--stats", find_stats, "Print characters read and skip rate");
    find->add_flag("--trace", find_trace, "Print every scan step");
    find->add_flag("--oracle-check", find_oracle, "Cross-check against the forward scanner (needs --pattern)");

    // trace
    auto* trace = app.add_subcommand("trace", "Print the scan step by step");
    CompileFlags tflags;
    add_compile_flags(trace, tflags, false);
    std::string trace_automaton, trace_input;
    trace->add_option("--automaton", trace_automaton, "Load a compiled automaton");
    trace->add_option("input", trace_input, "Input file to scan")->required();

    // dump
    auto* dump = app.add_subcommand("dump", "Validate and print an automaton file");
    std::string dump_path;
    dump->add_option("file", dump_path, "Automaton file")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Compare forward and skip scanning over a corpus");
    std::string bench_patterns, bench_corpus, bench_csv;
    ofa::BenchOptions bench_opt;
    bench->add_option("--patterns", bench_patterns, "Patterns file: id<TAB>pattern per line")->required();
    bench->add_option("--corpus", bench_corpus, "Corpus file")->required();
    bench->add_option("--reps", bench_opt.repetitions, "Timed repetitions per engine (best kept, default 3)");
    bench->add_option("--csv", bench_csv, "Write results CSV here (default stdout)");
    bench->add_flag("--parallel-compile", bench_opt.parallel_compile, "Compile patterns concurrently (not timed)");
    bench->add_option("--max-lookahead", bench_opt.budget.max_lookahead, "Lookahead growth limit (default 12)");
    bench->add_option("--max-trie-nodes", bench_opt.budget.max_nodes_per_trie, "Per-trie node budget (default 2^20)");
    bench->add_option("--dfa-cap", bench_opt.budget.dfa_state_cap, "Determinization state cap (default 2^20)");

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Build a fixed-size benchmark corpus from a seed text");
    std::string corpus_in, corpus_out, corpus_transform = "none";
    std::uint64_t corpus_size = 0;
    corpus->add_option("source", corpus_in, "Seed text file")->required();
    corpus->add_option("-o,--output", corpus_out, "Output file")->required();
    corpus->add_option("--size", corpus_size, "Target size in bytes")->required();
    corpus->add_option("--transform", corpus_transform, "none, lowercase, or strip-newlines")
        ->check(CLI::IsMember({"none", "lowercase", "strip-newlines"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (compile->parsed()) {
        const auto c = compile_from_flags(cflags);
        print_compile_summary(c);
        if (!compile_out.empty()) write_file(compile_out, ofa::serialize_ofa(c.ofa));
        return exit_ok;
    }

    if (find->parsed() || trace->parsed()) {
        const bool tracing = trace->parsed() || find_trace;
        const auto& flags = trace->parsed() ? tflags : fflags;
        const auto& automaton_path = trace->parsed() ? trace_automaton : find_automaton;
        const auto& input_path = trace->parsed() ? trace_input : find_input;
        if (flags.pattern.empty() == automaton_path.empty()) {
            std::cerr << "exactly one of --pattern and --automaton is required\n";
            return exit_usage;
        }
        if (find_oracle && flags.pattern.empty()) {
            std::cerr << "--oracle-check needs --pattern (the forward scanner is rebuilt from it)\n";
            return exit_usage;
        }
        std::optional<ofa::Compiled> compiled;
        ofa::Ofa loaded;
        if (!flags.pattern.empty()) {
            compiled = compile_from_flags(flags);
        } else {
            loaded = ofa::deserialize_ofa(read_file(automaton_path));
        }
        const ofa::Ofa& autom = compiled ? compiled->ofa : loaded;
        const std::u32string input = ofa::decode_utf8(read_file(input_path));

        if (tracing) {
            const auto steps = ofa::trace_match(autom, input);
            for (const auto& st : steps) {
                std::cout << "read " << st.index << " class " << st.cls << " state " << st.from << " -> " << st.to
                          << " theta " << st.theta;
                if (st.emitted) std::cout << " match " << st.position;
                std::cout << "\n";
            }
        }
        const auto rep = ofa::match_using_ofa(autom, input);
        for (auto p : rep.positions) std::cout << p << "\n";
        if (find->parsed() && find_stats) {
            std::cout << "chars-read " << rep.chars_read << "\n";
            std::cout << "input-length " << input.size() << "\n";
            const double pct = input.empty() ? 0.0 : 100.0 * double(rep.chars_read) / double(input.size());
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", pct);
            std::cout << "chars-read-pct " << buf << "\n";
        }
        if (find->parsed() && find_oracle) {
            const auto oracle = ofa::forward_scan(compiled->dfa, input);
            if (oracle.positions != rep.positions) {
                std::cerr << "oracle mismatch: forward scan disagrees with skip scan\n";
                return exit_mismatch;
            }
            std::cout << "oracle-check ok\n";
        }
        return exit_ok;
    }

    if (dump->parsed()) {
        const auto autom = ofa::deserialize_ofa(read_file(dump_path));
        std::cout << ofa::serialize_ofa(autom);
        return exit_ok;
    }

    if (bench->parsed()) {
        const auto patterns = ofa::parse_patterns_file(read_file(bench_patterns));
        const std::u32string corpus_text = ofa::decode_utf8(read_file(bench_corpus));
        const auto records = ofa::run_bench(patterns, corpus_text, bench_opt);
        const auto csv = ofa::bench_to_csv(records);
        if (bench_csv.empty())
            std::cout << csv;
        else
            write_file(bench_csv, csv);
        for (const auto& r : records)
            if (r.error.find("oracle mismatch") != std::string::npos) return exit_mismatch;
        return exit_ok;
    }

    if (corpus->parsed()) {
        const auto transform = corpus_transform == "lowercase"      ? ofa::CorpusTransform::lowercase
                               : corpus_transform == "strip-newlines" ? ofa::CorpusTransform::strip_newlines
                                                                      : ofa::CorpusTransform::none;
        write_file(corpus_out, ofa::make_corpus(read_file(corpus_in), corpus_size, transform));
        return exit_ok;
    }

    return exit_usage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ofa::parse_error& e) {
        std::cerr << "pattern error: " << e.what() << "\n";
        return exit_parse;
    } catch (const ofa::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const ofa::format_error& e) {
        std::cerr << "automaton file error: " << e.what() << "\n";
        return exit_io;
    } catch (const ofa::utf8_error& e) {
        std::cerr << "input decode error: " << e.what() << "\n";
        return exit_io;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
}
