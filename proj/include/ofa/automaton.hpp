#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

#include "ofa/classes.hpp"
#include "ofa/match.hpp"
#include "ofa/trie.hpp"

namespace ofa {

// Offsetting automaton: a DFA over class ids whose transitions also carry an
// index offset theta. Interior trie edges move the read index back one
// (theta = -1); leaf edges jump it forward past input the scan has already
// classified (theta >= 1). phi (stored for start and finals) converts the
// read index at a final into the matched end position: pos = index - phi.
struct Ofa {
    ClassMap classes;
    std::uint32_t state_count = 0;
    std::uint32_t start = 0;
    std::uint16_t class_count = 0;
    std::vector<std::uint32_t> finals;  // ascending
    std::vector<std::uint8_t> is_final; // bitmap, size state_count
    std::vector<std::uint32_t> delta;   // row-major [state][class]
    std::vector<std::int32_t> theta;    // parallel to delta
    std::vector<std::int32_t> phi;      // dense; meaningful at start and finals
    // Diagnostic: lookahead chosen per source DFA state, ascending by state.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> look;

    std::uint32_t next(std::uint32_t q, std::uint16_t c) const { return delta[std::size_t(q) * class_count + c]; }
    std::int32_t shift(std::uint32_t q, std::uint16_t c) const { return theta[std::size_t(q) * class_count + c]; }

    friend bool operator==(const Ofa& a, const Ofa& b) {
        if (!(a.classes == b.classes) || a.state_count != b.state_count || a.start != b.start ||
            a.class_count != b.class_count || a.finals != b.finals || a.delta != b.delta || a.theta != b.theta ||
            a.look != b.look)
            return false;
        auto phi_at = [](const Ofa& o, std::uint32_t q) { return o.phi[q]; };
        if (phi_at(a, a.start) != phi_at(b, b.start)) return false;
        for (std::size_t i = 0; i < a.finals.size(); ++i)
            if (phi_at(a, a.finals[i]) != phi_at(b, b.finals[i])) return false;
        return true;
    }
};

// Redirects every child slot holding a leaf for DFA state q to the root of
// q's trie. Applied to every arena cell, reachable or not; afterwards no
// walk from any root can reach a leaf.
inline void link_tries(TrieArena& arena, std::span<const TrieRef> roots) {
    for (auto& n : arena.nodes) {
        if (n.is_leaf()) continue;
        for (auto& c : n.child) {
            const auto& ch = arena.at(c);
            if (ch.is_leaf()) c = roots[ch.state];
        }
    }
}

// Builds the offsetting automaton for a DFA: one trie per state, offsets
// assigned, leaves linked to trie roots, then reachable nodes numbered by
// BFS from the start root in class order (canonical, so serialization is
// byte-stable). Tries unreachable from the start root are dropped.
inline Ofa build_ofa(const Dfa& dfa, const BudgetConfig& budget = {}) {
    const std::uint16_t k = dfa.class_count;
    const auto alive = alive_states(dfa);

    TrieArena arena;
    std::vector<TrieRef> roots(dfa.state_count);
    std::vector<std::uint32_t> look(dfa.state_count, 0);
    for (std::uint32_t q = 0; q < dfa.state_count; ++q) {
        auto r = build_trie(arena, dfa, q, budget, alive);
        roots[q] = r.root;
        look[q] = r.lookahead;
    }
    for (std::uint32_t q = 0; q < dfa.state_count; ++q) assign_offsets(arena, roots[q], look);
    link_tries(arena, roots);

    // Canonical numbering.
    constexpr std::uint32_t unset = ~0u;
    std::vector<std::uint32_t> id(arena.nodes.size(), unset);
    std::vector<TrieRef> order;
    std::queue<TrieRef> work;
    id[static_cast<std::size_t>(roots[dfa.start])] = 0;
    order.push_back(roots[dfa.start]);
    work.push(roots[dfa.start]);
    while (!work.empty()) {
        const auto t = work.front();
        work.pop();
        for (auto c : arena.at(t).child) {
            if (id[static_cast<std::size_t>(c)] == unset) {
                id[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(order.size());
                order.push_back(c);
                work.push(c);
            }
        }
    }

    Ofa ofa;
    ofa.classes = dfa.classes;
    ofa.class_count = k;
    ofa.state_count = static_cast<std::uint32_t>(order.size());
    ofa.start = 0;
    ofa.delta.resize(std::size_t(ofa.state_count) * k);
    ofa.theta.resize(std::size_t(ofa.state_count) * k);
    ofa.is_final.assign(ofa.state_count, 0);
    ofa.phi.assign(ofa.state_count, 0);
    for (std::uint32_t s = 0; s < ofa.state_count; ++s) {
        const auto& n = arena.at(order[s]);
        for (std::uint16_t c = 0; c < k; ++c) {
            ofa.delta[std::size_t(s) * k + c] = id[static_cast<std::size_t>(n.child[c])];
            ofa.theta[std::size_t(s) * k + c] = n.offset[c];
        }
    }
    for (std::uint32_t q = 0; q < dfa.state_count; ++q) {
        const auto root_id = id[static_cast<std::size_t>(roots[q])];
        if (root_id == unset) continue; // trie never entered by any scan
        if (dfa.is_final(q)) {
            ofa.finals.push_back(root_id);
            ofa.is_final[root_id] = 1;
            ofa.phi[root_id] = static_cast<std::int32_t>(look[q]) - 1;
        }
        if (q == dfa.start) ofa.phi[root_id] = static_cast<std::int32_t>(look[q]) - 1;
    }
    std::sort(ofa.finals.begin(), ofa.finals.end());
    for (std::uint32_t q = 0; q < dfa.state_count; ++q) ofa.look.emplace_back(q, look[q]);
    return ofa;
}

// Scans s, skipping characters the tries prove irrelevant. Every iteration
// reads one character; the index moves by theta. Entering a final state at
// read index i means the prefix of length i - phi matched.
inline MatchReport match_using_ofa(const Ofa& ofa, std::u32string_view s, bool track_reads = false) {
    MatchReport rep;
    if (track_reads) rep.read_indices.emplace();
    if (ofa.is_final[ofa.start]) rep.positions.push_back(0);
    const std::uint64_t n = s.size();
    const std::uint16_t k = ofa.class_count;
    std::uint32_t q = ofa.start;
    std::uint64_t index = static_cast<std::uint64_t>(ofa.phi[ofa.start]);
    std::uint64_t reads = 0;
    while (index < n) {
        if (track_reads) rep.read_indices->push_back(index);
        const std::uint16_t c = ofa.classes.class_of(s[index]);
        ++reads;
        const std::size_t row = std::size_t(q) * k + c;
        index += static_cast<std::uint64_t>(static_cast<std::int64_t>(ofa.theta[row]));
        q = ofa.delta[row];
        if (ofa.is_final[q]) rep.positions.push_back(index - static_cast<std::uint64_t>(ofa.phi[q]));
    }
    rep.chars_read = rep.iterations = reads;
    return rep;
}

// One scan step: which index was read, the class seen, the edge taken, and
// whether a match position was emitted.
struct TraceStep {
    std::uint64_t index;     // read index
    std::uint16_t cls;
    std::uint32_t from;
    std::uint32_t to;
    std::int32_t theta;
    bool emitted;
    std::uint64_t position; // valid when emitted
};

inline std::vector<TraceStep> trace_match(const Ofa& ofa, std::u32string_view s) {
    std::vector<TraceStep> steps;
    const std::uint64_t n = s.size();
    const std::uint16_t k = ofa.class_count;
    std::uint32_t q = ofa.start;
    std::uint64_t index = static_cast<std::uint64_t>(ofa.phi[ofa.start]);
    while (index < n) {
        TraceStep st{};
        st.index = index;
        st.cls = ofa.classes.class_of(s[index]);
        st.from = q;
        const std::size_t row = std::size_t(q) * k + st.cls;
        st.theta = ofa.theta[row];
        index += static_cast<std::uint64_t>(static_cast<std::int64_t>(st.theta));
        q = ofa.delta[row];
        st.to = q;
        st.emitted = ofa.is_final[q] != 0;
        st.position = st.emitted ? index - static_cast<std::uint64_t>(ofa.phi[q]) : 0;
        steps.push_back(st);
    }
    return steps;
}

} // namespace ofa
