#pragma once

#include <string_view>

#include "ofa/automaton.hpp"
#include "ofa/dfa.hpp"
#include "ofa/parse.hpp"

namespace ofa {

// end_positions: report every position where some suffix of the consumed
// input matches (the pattern is run with an implicit leading any*).
// anchored: report positions whose whole prefix matches.
enum class MatchMode { end_positions, anchored };

struct CompileOptions {
    MatchMode mode = MatchMode::end_positions;
    AlphabetMode alphabet = AlphabetMode::full;
    BudgetConfig budget{};
};

struct Compiled {
    Ast ast; // after any end-positions rewrite
    ClassMap classes;
    Dfa dfa;
    Ofa ofa;
};

// Full pipeline: parse, rewrite for the requested mode, partition the
// alphabet, build and minimize the DFA, then attach scanning tries.
inline Compiled compile_pattern(std::string_view pattern, const CompileOptions& opt = {}) {
    Compiled out;
    Ast parsed = parse_pattern(pattern);
    out.ast = opt.mode == MatchMode::end_positions ? wrap_for_end_positions(parsed) : std::move(parsed);
    out.classes = compute_equivalence_classes(out.ast, opt.alphabet);
    const Nfa nfa = build_nfa(out.ast, out.classes);
    out.dfa = minimize(determinize(nfa, out.classes, opt.budget));
    out.ofa = build_ofa(out.dfa, opt.budget);
    return out;
}

} // namespace ofa
