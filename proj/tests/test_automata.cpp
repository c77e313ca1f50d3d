#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "ofa/dfa.hpp"
#include "ofa/parse.hpp"
#include "ofa/pipeline.hpp"

using namespace ofa;

namespace {

struct Built {
    ClassMap classes;
    Nfa nfa;
    Dfa dfa;
};

Built build(const Ast& ast, AlphabetMode mode = AlphabetMode::full) {
    Built b;
    b.classes = compute_equivalence_classes(ast, mode);
    b.nfa = build_nfa(ast, b.classes);
    b.dfa = minimize(determinize(b.nfa, b.classes));
    return b;
}

std::vector<std::uint16_t> to_classes(const ClassMap& m, const std::u32string& s) {
    std::vector<std::uint16_t> out;
    for (auto cp : s) out.push_back(m.class_of(cp));
    return out;
}

// Frozen reference table for (a|b)*(abb)+ over the two-letter alphabet,
// states renumbered by BFS from the start in class order (a first).
constexpr std::uint32_t ref_delta[4][2] = {{1, 0}, {1, 2}, {1, 3}, {1, 0}};

TEST(Automata, WorkedExampleMinimalDfa) {
    const Built b = build(parse_pattern("(a|b)*(abb)+"), AlphabetMode::pattern_only);
    ASSERT_EQ(b.dfa.class_count, 2u);
    ASSERT_EQ(b.dfa.state_count, 4u);
    EXPECT_EQ(b.dfa.start, 0u);
    for (std::uint32_t q = 0; q < 4; ++q)
        for (std::uint16_t c = 0; c < 2; ++c) EXPECT_EQ(b.dfa.next(q, c), ref_delta[q][c]) << "q=" << q << " c=" << c;
    for (std::uint32_t q = 0; q < 4; ++q) EXPECT_EQ(b.dfa.is_final(q), q == 3) << "q=" << q;
}

TEST(Automata, NfaMatchesTreeEvaluatorOnEnumeratedStrings) {
    std::mt19937 rng(555001);
    const char32_t alphabet[] = {U'a', U'b'};
    for (int iter = 0; iter < 120; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        const ClassMap m = compute_equivalence_classes(a);
        const Nfa nfa = build_nfa(a, m);
        // All strings over {a, b, z} up to length 5; z exercises the
        // catch-all class.
        const char32_t chars[] = {U'a', U'b', U'z'};
        for (std::size_t len = 0; len <= 5; ++len) {
            oracle::enumerate_class_strings(3, len, [&](const std::vector<std::uint16_t>& digits) {
                std::u32string s;
                for (auto d : digits) s.push_back(chars[d]);
                const bool want = oracle::tree_accepts(a, s);
                const bool got = nfa_accepts(nfa, to_classes(m, s));
                ASSERT_EQ(got, want) << "pattern " << to_pattern(a) << " input len " << s.size();
            });
        }
    }
}

TEST(Automata, DeterminizeAndMinimizePreserveTheLanguage) {
    std::mt19937 rng(555002);
    const char32_t alphabet[] = {U'a', U'b'};
    for (int iter = 0; iter < 120; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        const ClassMap m = compute_equivalence_classes(a);
        const Nfa nfa = build_nfa(a, m);
        const Dfa raw = determinize(nfa, m);
        const Dfa min = minimize(raw);
        EXPECT_LE(min.state_count, raw.state_count);
        const char32_t chars[] = {U'a', U'b', U'z'};
        for (std::size_t len = 0; len <= 5; ++len) {
            oracle::enumerate_class_strings(3, len, [&](const std::vector<std::uint16_t>& digits) {
                std::u32string s;
                for (auto d : digits) s.push_back(chars[d]);
                const auto cls = to_classes(m, s);
                const bool via_nfa = nfa_accepts(nfa, cls);
                const bool via_raw = raw.is_final(delta_string(raw, raw.start, std::span(cls)));
                const bool via_min = min.is_final(delta_string(min, min.start, std::span(cls)));
                ASSERT_EQ(via_raw, via_nfa);
                ASSERT_EQ(via_min, via_nfa);
            });
        }
    }
}

TEST(Automata, MinimizeIsIdempotentAndCanonical) {
    std::mt19937 rng(555003);
    const char32_t alphabet[] = {U'a', U'b', U'c'};
    for (int iter = 0; iter < 100; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        const ClassMap m = compute_equivalence_classes(a);
        const Dfa min = minimize(determinize(build_nfa(a, m), m));
        const Dfa again = minimize(min);
        EXPECT_EQ(again.state_count, min.state_count);
        EXPECT_EQ(again.delta, min.delta);
        EXPECT_EQ(again.finals, min.finals);
        EXPECT_EQ(again.start, min.start);
    }
}

// No two states of a minimized DFA may accept the same residual language;
// checked pairwise by BFS over the product automaton.
TEST(Automata, MinimizedStatesArePairwiseDistinguishable) {
    std::mt19937 rng(555004);
    const char32_t alphabet[] = {U'a', U'b'};
    for (int iter = 0; iter < 60; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        const ClassMap m = compute_equivalence_classes(a);
        const Dfa min = minimize(determinize(build_nfa(a, m), m));
        for (std::uint32_t p = 0; p < min.state_count; ++p) {
            for (std::uint32_t q = p + 1; q < min.state_count; ++q) {
                // BFS for a distinguishing string.
                std::vector<bool> seen(std::size_t(min.state_count) * min.state_count, false);
                std::queue<std::pair<std::uint32_t, std::uint32_t>> work;
                work.emplace(p, q);
                seen[std::size_t(p) * min.state_count + q] = true;
                bool distinguished = false;
                while (!work.empty() && !distinguished) {
                    const auto [x, y] = work.front();
                    work.pop();
                    if (min.is_final(x) != min.is_final(y)) {
                        distinguished = true;
                        break;
                    }
                    for (std::uint16_t c = 0; c < min.class_count; ++c) {
                        const auto nx = min.next(x, c), ny = min.next(y, c);
                        auto lo = std::min(nx, ny), hi = std::max(nx, ny);
                        if (lo == hi) continue;
                        if (!seen[std::size_t(lo) * min.state_count + hi]) {
                            seen[std::size_t(lo) * min.state_count + hi] = true;
                            work.emplace(lo, hi);
                        }
                    }
                }
                ASSERT_TRUE(distinguished)
                    << "states " << p << " and " << q << " are equivalent in " << to_pattern(a);
            }
        }
    }
}

TEST(Automata, ForwardScanAgreesWithPerPrefixRecomputation) {
    std::mt19937 rng(555005);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t inputs[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 150; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        for (auto mode : {MatchMode::anchored, MatchMode::end_positions}) {
            const Ast run = mode == MatchMode::end_positions ? wrap_for_end_positions(a) : a;
            const Built b = build(run);
            const std::u32string s = gen::random_input(rng, 40, inputs);
            const MatchReport rep = forward_scan(b.dfa, s);
            EXPECT_EQ(rep.positions, oracle::prefix_final_positions(b.dfa, s));
            EXPECT_EQ(rep.chars_read, s.size());
        }
    }
}

TEST(Automata, ForwardScanMatchesTreeSemantics) {
    std::mt19937 rng(555006);
    const char32_t alphabet[] = {U'a', U'b'};
    const char32_t inputs[] = {U'a', U'b', U'z'};
    for (int iter = 0; iter < 150; ++iter) {
        const Ast a = gen::random_ast(rng, 3, alphabet);
        const std::u32string s = gen::random_input(rng, 24, inputs);

        const Built anchored = build(a);
        EXPECT_EQ(forward_scan(anchored.dfa, s).positions, oracle::anchored_positions(a, s))
            << "pattern " << to_pattern(a);

        const Built wrapped = build(wrap_for_end_positions(a));
        EXPECT_EQ(forward_scan(wrapped.dfa, s).positions, oracle::end_positions(a, s))
            << "pattern " << to_pattern(a);
    }
}

TEST(Automata, DeadStatesAreKeptAndTotal) {
    const Built b = build(parse_pattern("ab"));
    // Anchored "ab" needs a dead state; the table stays total.
    const auto alive = alive_states(b.dfa);
    bool has_dead = false;
    for (std::uint32_t q = 0; q < b.dfa.state_count; ++q) {
        for (std::uint16_t c = 0; c < b.dfa.class_count; ++c) ASSERT_LT(b.dfa.next(q, c), b.dfa.state_count);
        if (!alive[q]) has_dead = true;
    }
    EXPECT_TRUE(has_dead);
    EXPECT_EQ(b.dfa.state_count, 4u); // start, a-seen, accept, dead
}

TEST(Automata, StateCapThrowsBudgetError) {
    const Ast a = parse_pattern("(a|b)*a(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)");
    const ClassMap m = compute_equivalence_classes(a);
    BudgetConfig tight;
    tight.dfa_state_cap = 16; // needs 2^7 subsets; must trip
    EXPECT_THROW(determinize(build_nfa(a, m), m, tight), budget_error);
}

TEST(Automata, DeltaStringFoldsTransitions) {
    const Built b = build(parse_pattern("(a|b)*(abb)+"), AlphabetMode::pattern_only);
    EXPECT_EQ(delta_string(b.dfa, b.dfa.start, std::u32string_view(U"abb")), 3u);
    EXPECT_EQ(delta_string(b.dfa, b.dfa.start, std::u32string_view(U"abba")), 1u);
    EXPECT_EQ(delta_string(b.dfa, b.dfa.start, std::u32string_view(U"")), 0u);
    const std::vector<std::uint16_t> cls{0, 1, 1};
    EXPECT_EQ(delta_string(b.dfa, 0, std::span(cls)), 3u);
}

} // namespace
