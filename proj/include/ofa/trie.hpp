#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ofa/budget.hpp"
#include "ofa/dfa.hpp"

namespace ofa {

// Tries live in an arena; a TrieRef indexes it. A leaf carries the DFA state
// reached by the scanned string; an interior node carries its depth (level)
// and one child per class. offset[] is filled by assign_offsets.
using TrieRef = std::int32_t;

struct TrieNode {
    std::uint32_t state = 0;          // leaf payload
    std::int32_t level = -1;          // < 0 marks a leaf
    std::vector<TrieRef> child;       // interior: size class_count
    std::vector<std::int32_t> offset; // interior: parallel to child

    bool is_leaf() const { return level < 0; }
};

struct TrieArena {
    std::vector<TrieNode> nodes;

    TrieRef make_leaf(std::uint32_t state) {
        nodes.push_back(TrieNode{state, -1, {}, {}});
        return static_cast<TrieRef>(nodes.size() - 1);
    }
    TrieRef make_node(std::int32_t level, std::uint16_t class_count) {
        TrieNode n;
        n.level = level;
        n.child.assign(class_count, -1);
        nodes.push_back(std::move(n));
        return static_cast<TrieRef>(nodes.size() - 1);
    }
    const TrieNode& at(TrieRef r) const { return nodes[static_cast<std::size_t>(r)]; }
    TrieNode& at(TrieRef r) { return nodes[static_cast<std::size_t>(r)]; }
};

struct TrieBuildResult {
    TrieRef root = -1;
    std::uint32_t lookahead = 0; // always >= 1
    bool reached_final = false;  // some leaf state is final
};

// Walks the trie consuming characters of s from the END (deepest node first)
// until a leaf, returning its DFA state. A trie built for lookahead L
// answers delta_string(dfa, q, s) for any |s| = L. Class-id variant first;
// the code-point variant maps through the DFA's class map.
inline std::uint32_t select_state(const TrieArena& arena, TrieRef root, std::span<const std::uint16_t> classes) {
    TrieRef t = root;
    std::size_t i = classes.size();
    while (!arena.at(t).is_leaf()) {
        if (i == 0) throw std::logic_error("select_state: string shorter than trie depth");
        t = arena.at(t).child[classes[--i]];
    }
    return arena.at(t).state;
}

inline std::uint32_t select_state(const TrieArena& arena, TrieRef root, const Dfa& dfa, std::u32string_view s) {
    TrieRef t = root;
    std::size_t i = s.size();
    while (!arena.at(t).is_leaf()) {
        if (i == 0) throw std::logic_error("select_state: string shorter than trie depth");
        t = arena.at(t).child[dfa.classes.class_of(s[--i])];
    }
    return arena.at(t).state;
}

// A node is compressible when every child is a leaf and all carry one state:
// the node answers that state for any continuation, so a leaf can stand in.
inline bool is_compressible(const TrieArena& arena, TrieRef t) {
    const auto& n = arena.at(t);
    if (n.is_leaf()) return false;
    const auto& first = arena.at(n.child[0]);
    if (!first.is_leaf()) return false;
    for (std::size_t c = 1; c < n.child.size(); ++c) {
        const auto& ch = arena.at(n.child[c]);
        if (!ch.is_leaf() || ch.state != first.state) return false;
    }
    return true;
}

// Copy of t one level deeper with every leaf state q replaced by
// delta(q, cls), compressed bottom-up: a copy whose children collapse to one
// leaf state becomes that leaf. The result satisfies
//   select(evolve(t, cls), s) == delta(select(t, s), cls).
inline TrieRef evolve_and_compress(TrieArena& arena, TrieRef t, std::uint16_t cls, const Dfa& dfa) {
    if (arena.at(t).is_leaf()) return arena.make_leaf(dfa.next(arena.at(t).state, cls));
    const auto k = static_cast<std::uint16_t>(arena.at(t).child.size());
    const TrieRef copy = arena.make_node(arena.at(t).level + 1, k);
    for (std::uint16_t c = 0; c < k; ++c) {
        const TrieRef ch = evolve_and_compress(arena, arena.at(t).child[c], cls, dfa);
        arena.at(copy).child[c] = ch;
    }
    if (is_compressible(arena, copy)) return arena.at(copy).child[0]; // any child; all equal
    return copy;
}

// New root whose class-c subtree evolves t by c. Scanning one character
// deeper: the new trie answers strings one longer than t did. The fresh root
// is never compressed, even if it qualifies.
inline TrieRef grow_trie(TrieArena& arena, TrieRef t, const Dfa& dfa) {
    const std::uint16_t k = dfa.class_count;
    const TrieRef root = arena.make_node(0, k);
    for (std::uint16_t c = 0; c < k; ++c) {
        const TrieRef ch = evolve_and_compress(arena, t, c, dfa);
        arena.at(root).child[c] = ch;
    }
    return root;
}

inline bool reached_final(const TrieArena& arena, TrieRef t, const Dfa& dfa) {
    const auto& n = arena.at(t);
    if (n.is_leaf()) return dfa.is_final(n.state);
    for (auto c : n.child)
        if (reached_final(arena, c, dfa)) return true;
    return false;
}

// Leaves count as nodes here: the budget bounds arena cells, and one growth
// step multiplies the cell count by at most class_count (plus the root).
inline std::uint32_t trie_node_count(const TrieArena& arena, TrieRef t) {
    const auto& n = arena.at(t);
    if (n.is_leaf()) return 1;
    std::uint32_t total = 1;
    for (auto c : n.child) total += trie_node_count(arena, c);
    return total;
}

inline bool budget_allows_bigger_trie(std::uint32_t /*q*/, const TrieArena& arena, TrieRef t,
                                      std::uint32_t lookahead, std::uint16_t class_count,
                                      const BudgetConfig& budget) {
    if (lookahead >= budget.max_lookahead) return false;
    return std::uint64_t(trie_node_count(arena, t)) * class_count <= budget.max_nodes_per_trie;
}

// Grows state q's scanning trie until the first lookahead that can prove a
// match (some leaf final), or the budget stops growth. Growth happens once
// before the loop, so lookahead >= 1 even when q is final. When the stop was
// reached_final, lookahead equals the length of the shortest non-empty
// string from q to a final state. Dead states get a fixed lookahead-1 trie;
// growing them further would burn budget and never reach a final.
inline TrieBuildResult build_trie(TrieArena& arena, const Dfa& dfa, std::uint32_t q, const BudgetConfig& budget,
                                  std::span<const std::uint8_t> alive) {
    TrieRef t = grow_trie(arena, arena.make_leaf(q), dfa);
    std::uint32_t lookahead = 1;
    if (alive[q]) {
        while (!reached_final(arena, t, dfa) &&
               budget_allows_bigger_trie(q, arena, t, lookahead, dfa.class_count, budget)) {
            t = grow_trie(arena, t, dfa);
            ++lookahead;
        }
    }
    return {t, lookahead, reached_final(arena, t, dfa)};
}

inline TrieBuildResult build_trie(TrieArena& arena, const Dfa& dfa, std::uint32_t q, const BudgetConfig& budget = {}) {
    const auto alive = alive_states(dfa);
    return build_trie(arena, dfa, q, budget, alive);
}

// Transition offsets, the amount the scan index moves when the edge is
// taken. Into an interior node: -1 (scanning continues one position left).
// Into a leaf for state p: level(node) + look(p), jumping the scan window
// past everything this trie already proved. look maps DFA state -> lookahead
// and must cover every leaf state.
inline void assign_offsets(TrieArena& arena, TrieRef t, std::span<const std::uint32_t> look) {
    auto& n = arena.at(t);
    if (n.is_leaf()) return;
    n.offset.assign(n.child.size(), 0);
    for (std::size_t c = 0; c < n.child.size(); ++c) {
        const auto& ch = arena.at(n.child[c]);
        if (ch.is_leaf()) {
            if (ch.state >= look.size() || look[ch.state] == 0)
                throw std::logic_error("assign_offsets: missing lookahead for leaf state");
            arena.at(t).offset[c] = n.level + static_cast<std::int32_t>(look[ch.state]);
        } else {
            arena.at(t).offset[c] = -1;
            assign_offsets(arena, n.child[c], look);
        }
    }
}

} // namespace ofa
