#include <gtest/gtest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "ofa/all.hpp"

using namespace ofa;

namespace {

Compiled worked_example() {
    CompileOptions opt;
    opt.mode = MatchMode::anchored;
    opt.alphabet = AlphabetMode::pattern_only;
    return compile_pattern("(a|b)*(abb)+", opt);
}

// The full automaton for (a|b)*(abb)+ over a two-class alphabet, frozen by
// hand from the four-state DFA and its per-state scanning tries.
struct RefEdge {
    std::uint32_t to;
    std::int32_t theta;
};
constexpr RefEdge ref_table[9][2] = {
    {{1, 2}, {2, -1}}, // start trie root
    {{1, 2}, {3, -1}},
    {{4, 2}, {5, -1}},
    {{4, 2}, {6, 4}},
    {{1, 2}, {6, 3}},
    {{6, 5}, {0, 5}},
    {{1, 2}, {7, -1}}, // final: root of the accepting state's trie
    {{4, 2}, {8, -1}},
    {{6, 5}, {0, 5}},
};

TEST(Ofa, WorkedExampleTable) {
    const Compiled c = worked_example();
    const Ofa& o = c.ofa;
    ASSERT_EQ(o.state_count, 9u);
    ASSERT_EQ(o.class_count, 2u);
    EXPECT_EQ(o.start, 0u);
    EXPECT_EQ(o.finals, (std::vector<std::uint32_t>{6}));
    EXPECT_EQ(o.phi[0], 2);
    EXPECT_EQ(o.phi[6], 2);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> look{{0, 3}, {1, 2}, {2, 1}, {3, 3}};
    EXPECT_EQ(o.look, look);
    for (std::uint32_t s = 0; s < 9; ++s) {
        for (std::uint16_t cls = 0; cls < 2; ++cls) {
            EXPECT_EQ(o.next(s, cls), ref_table[s][cls].to) << "state " << s << " class " << cls;
            EXPECT_EQ(o.shift(s, cls), ref_table[s][cls].theta) << "state " << s << " class " << cls;
        }
    }
}

TEST(Ofa, WorkedExampleMatchSkipsTwoCharacters) {
    const Compiled c = worked_example();
    const auto rep = match_using_ofa(c.ofa, U"abbabaabb", /*track_reads=*/true);
    EXPECT_EQ(rep.positions, (std::vector<std::uint64_t>{3, 9}));
    EXPECT_EQ(rep.chars_read, 7u);
    ASSERT_TRUE(rep.read_indices.has_value());
    EXPECT_EQ(*rep.read_indices, (std::vector<std::uint64_t>{2, 1, 0, 5, 7, 6, 8}));
}

TEST(Ofa, WorkedExampleTrace) {
    const Compiled c = worked_example();
    const auto steps = trace_match(c.ofa, U"abbabaabb");
    ASSERT_EQ(steps.size(), 7u);

    EXPECT_EQ(steps[0].index, 2u);
    EXPECT_EQ(steps[0].from, 0u);
    EXPECT_EQ(steps[0].cls, 1u);
    EXPECT_EQ(steps[0].to, 2u);
    EXPECT_EQ(steps[0].theta, -1);
    EXPECT_FALSE(steps[0].emitted);

    EXPECT_EQ(steps[2].index, 0u);
    EXPECT_EQ(steps[2].to, 6u);
    EXPECT_EQ(steps[2].theta, 5);
    EXPECT_TRUE(steps[2].emitted);
    EXPECT_EQ(steps[2].position, 3u);

    EXPECT_EQ(steps[6].index, 8u);
    EXPECT_EQ(steps[6].to, 6u);
    EXPECT_TRUE(steps[6].emitted);
    EXPECT_EQ(steps[6].position, 9u);
}

TEST(Ofa, LinkedTableHasNoLeaves) {
    // Every transition lands on another automaton state, and theta is -1
    // exactly on edges into non-root interior nodes (phi rows are roots).
    std::mt19937 rng(920001);
    const char32_t alphabet[] = {U'a', U'b'};
    for (int iter = 0; iter < 60; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        CompileOptions opt;
        opt.budget.max_lookahead = 6;
        const Compiled c = compile_pattern(to_pattern(ast), opt);
        const Ofa& o = c.ofa;
        // Roots are exactly the targets of forward jumps plus the start.
        std::vector<bool> jump_target(o.state_count, false);
        jump_target[o.start] = true;
        for (std::uint32_t s = 0; s < o.state_count; ++s)
            for (std::uint16_t cls = 0; cls < o.class_count; ++cls) {
                ASSERT_LT(o.next(s, cls), o.state_count);
                const auto th = o.shift(s, cls);
                ASSERT_TRUE(th == -1 || th >= 1);
                if (th >= 1) jump_target[o.next(s, cls)] = true;
            }
        // A -1 edge target must never be a trie root: roots are where jumps
        // land, and every root's lookahead window restarts there.
        for (std::uint32_t s = 0; s < o.state_count; ++s)
            for (std::uint16_t cls = 0; cls < o.class_count; ++cls)
                if (o.shift(s, cls) == -1) ASSERT_FALSE(jump_target[o.next(s, cls)]) << to_pattern(ast);
    }
}

TEST(Ofa, EmptyInput) {
    // start is final for end-positions patterns that accept the empty string.
    const Compiled star = compile_pattern("(ab)*");
    const auto rep1 = match_using_ofa(star.ofa, U"");
    EXPECT_EQ(rep1.positions, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(rep1.chars_read, 0u);

    const Compiled plus = compile_pattern("(ab)+");
    const auto rep2 = match_using_ofa(plus.ofa, U"");
    EXPECT_TRUE(rep2.positions.empty());
    EXPECT_EQ(rep2.chars_read, 0u);
}

TEST(Ofa, InputShorterThanFirstWindowIsNeverRead) {
    // phi(start) = 2 for the worked example: inputs of length <= 2 cannot
    // contain a match, and the scan proves it without reading anything.
    const Compiled c = worked_example();
    for (const auto* s : {U"", U"a", U"ab"}) {
        const auto rep = match_using_ofa(c.ofa, s);
        EXPECT_TRUE(rep.positions.empty());
        EXPECT_EQ(rep.chars_read, 0u);
    }
}

TEST(Ofa, PositionsAreStrictlyAscending) {
    std::mt19937 rng(920002);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t input_chars[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 150; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        const Compiled c = compile_pattern(to_pattern(ast));
        for (int j = 0; j < 10; ++j) {
            const auto s = gen::random_input(rng, 60, input_chars);
            const auto rep = match_using_ofa(c.ofa, s);
            for (std::size_t i = 1; i < rep.positions.size(); ++i)
                ASSERT_LT(rep.positions[i - 1], rep.positions[i]);
            for (auto p : rep.positions) ASSERT_LE(p, s.size());
        }
    }
}

TEST(Ofa, AgreesWithForwardScan) {
    std::mt19937 rng(920003);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t input_chars[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 200; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        for (auto mode : {MatchMode::end_positions, MatchMode::anchored}) {
            CompileOptions opt;
            opt.mode = mode;
            const Compiled c = compile_pattern(to_pattern(ast), opt);
            for (int j = 0; j < 8; ++j) {
                const auto s = gen::random_input(rng, 80, input_chars);
                const auto ours = match_using_ofa(c.ofa, s);
                const auto ref = forward_scan(c.dfa, s);
                ASSERT_EQ(ours.positions, ref.positions) << to_pattern(ast);
                ASSERT_LE(ours.chars_read, s.size());
            }
        }
    }
}

TEST(Ofa, TraceAgreesWithMatch) {
    std::mt19937 rng(920004);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t input_chars[] = {U'a', U'b'};
    for (int iter = 0; iter < 60; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        const Compiled c = compile_pattern(to_pattern(ast));
        const auto s = gen::random_input(rng, 60, input_chars);
        const auto rep = match_using_ofa(c.ofa, s, /*track_reads=*/true);
        const auto steps = trace_match(c.ofa, s);
        ASSERT_EQ(steps.size(), rep.chars_read);
        std::vector<std::uint64_t> emitted;
        if (c.ofa.is_final[c.ofa.start]) emitted.push_back(0);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            EXPECT_EQ(steps[i].index, (*rep.read_indices)[i]);
            if (steps[i].emitted) emitted.push_back(steps[i].position);
        }
        EXPECT_EQ(emitted, rep.positions);
    }
}

TEST(Ofa, NoIndexReadTwice) {
    std::mt19937 rng(920005);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t input_chars[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 100; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        const Compiled c = compile_pattern(to_pattern(ast));
        for (int j = 0; j < 5; ++j) {
            const auto s = gen::random_input(rng, 100, input_chars);
            const auto rep = match_using_ofa(c.ofa, s, /*track_reads=*/true);
            std::set<std::uint64_t> seen(rep.read_indices->begin(), rep.read_indices->end());
            ASSERT_EQ(seen.size(), rep.read_indices->size()) << to_pattern(ast);
            ASSERT_EQ(rep.chars_read, rep.read_indices->size());
            ASSERT_LE(rep.chars_read, s.size());
            for (auto i : *rep.read_indices) ASSERT_LT(i, s.size());
        }
    }
}

TEST(Ofa, LookaheadOneDegradesToForwardScan) {
    // With every trie stopped at depth 1 the automaton is the DFA itself:
    // each step reads the next character and moves the index by one.
    std::mt19937 rng(920006);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t input_chars[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 80; ++iter) {
        const Ast ast = gen::random_ast(rng, 3, alphabet);
        CompileOptions opt;
        opt.budget.max_lookahead = 1;
        const Compiled c = compile_pattern(to_pattern(ast), opt);
        for (const auto& [q, la] : c.ofa.look) EXPECT_EQ(la, 1u);
        const auto s = gen::random_input(rng, 80, input_chars);
        const auto rep = match_using_ofa(c.ofa, s);
        EXPECT_EQ(rep.chars_read, s.size());
        EXPECT_EQ(rep.positions, forward_scan(c.dfa, s).positions);
    }
}

TEST(Ofa, StructuralEqualityDetectsDifferences) {
    const Compiled a = worked_example();
    const Compiled b = worked_example();
    EXPECT_TRUE(a.ofa == b.ofa);
    Ofa mutated = b.ofa;
    mutated.theta[3] += 1;
    EXPECT_FALSE(a.ofa == mutated);
}

} // namespace
