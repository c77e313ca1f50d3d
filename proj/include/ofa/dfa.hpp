#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

#include "ofa/budget.hpp"
#include "ofa/classes.hpp"
#include "ofa/match.hpp"
#include "ofa/nfa.hpp"

namespace ofa {

// Deterministic automaton over class ids with a total transition table.
// Every state is reachable from start; dead states (no final reachable) are
// kept, not pruned.
struct Dfa {
    std::uint32_t state_count = 0;
    std::uint32_t start = 0;
    std::uint16_t class_count = 0;
    std::vector<std::uint8_t> finals; // bitmap, size state_count
    std::vector<std::uint32_t> delta; // row-major [state][class]
    ClassMap classes;

    std::uint32_t next(std::uint32_t q, std::uint16_t c) const { return delta[std::size_t(q) * class_count + c]; }
    bool is_final(std::uint32_t q) const { return finals[q] != 0; }
};

// Subset construction; only reachable subsets are materialized. The empty
// subset becomes an ordinary dead state so the table stays total. Throws
// budget_error past budget.dfa_state_cap states.
inline Dfa determinize(const Nfa& nfa, const ClassMap& map, const BudgetConfig& budget = {}) {
    const std::uint16_t k = map.class_count;

    auto closure = [&](std::vector<std::uint32_t>& set) {
        std::vector<std::uint32_t> stack(set);
        std::vector<bool> in(nfa.state_count(), false);
        for (auto s : set) in[s] = true;
        while (!stack.empty()) {
            const auto s = stack.back();
            stack.pop_back();
            for (auto t : nfa.eps[s])
                if (!in[t]) {
                    in[t] = true;
                    set.push_back(t);
                    stack.push_back(t);
                }
        }
        std::sort(set.begin(), set.end());
    };

    Dfa dfa;
    dfa.class_count = k;
    dfa.classes = map;

    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> subsets;
    auto intern = [&](std::vector<std::uint32_t> set) {
        auto it = ids.find(set);
        if (it != ids.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(subsets.size());
        if (id >= budget.dfa_state_cap) throw budget_error("DFA state cap exceeded");
        ids.emplace(set, id);
        subsets.push_back(std::move(set));
        return id;
    };

    std::vector<std::uint32_t> start_set{nfa.start};
    closure(start_set);
    dfa.start = intern(std::move(start_set));

    for (std::uint32_t q = 0; q < subsets.size(); ++q) {
        for (std::uint16_t c = 0; c < k; ++c) {
            std::vector<std::uint32_t> next;
            std::vector<bool> in(nfa.state_count(), false);
            for (auto s : subsets[q]) {
                for (const auto& e : nfa.edges[s])
                    if (e.cls == c && !in[e.to]) {
                        in[e.to] = true;
                        next.push_back(e.to);
                    }
            }
            closure(next);
            dfa.delta.push_back(intern(std::move(next))); // rows fill in order
        }
    }

    dfa.state_count = static_cast<std::uint32_t>(subsets.size());
    dfa.delta.resize(std::size_t(dfa.state_count) * k, 0);
    dfa.finals.assign(dfa.state_count, 0);
    for (std::uint32_t q = 0; q < dfa.state_count; ++q)
        dfa.finals[q] = std::binary_search(subsets[q].begin(), subsets[q].end(), nfa.accept) ? 1 : 0;
    return dfa;
}

namespace detail {

// Renumber states as visited by BFS from start, taking transitions in class
// order. Gives one canonical numbering to any reachable DFA.
inline Dfa renumber_bfs(const Dfa& in) {
    constexpr std::uint32_t unset = ~0u;
    std::vector<std::uint32_t> id(in.state_count, unset);
    std::vector<std::uint32_t> order;
    std::queue<std::uint32_t> work;
    id[in.start] = 0;
    order.push_back(in.start);
    work.push(in.start);
    while (!work.empty()) {
        const auto q = work.front();
        work.pop();
        for (std::uint16_t c = 0; c < in.class_count; ++c) {
            const auto t = in.next(q, c);
            if (id[t] == unset) {
                id[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
                work.push(t);
            }
        }
    }
    Dfa out;
    out.state_count = static_cast<std::uint32_t>(order.size());
    out.start = 0;
    out.class_count = in.class_count;
    out.classes = in.classes;
    out.finals.assign(out.state_count, 0);
    out.delta.resize(std::size_t(out.state_count) * out.class_count);
    for (std::uint32_t nq = 0; nq < out.state_count; ++nq) {
        const auto oq = order[nq];
        out.finals[nq] = in.finals[oq];
        for (std::uint16_t c = 0; c < in.class_count; ++c)
            out.delta[std::size_t(nq) * out.class_count + c] = id[in.next(oq, c)];
    }
    return out;
}

} // namespace detail

// Partition refinement to the unique minimal DFA for the language, then BFS
// renumbering so equal languages yield byte-identical tables.
inline Dfa minimize(const Dfa& in) {
    std::vector<std::uint32_t> block(in.state_count);
    for (std::uint32_t q = 0; q < in.state_count; ++q) block[q] = in.finals[q] ? 1 : 0;
    std::uint32_t block_count = 2;
    // A DFA with no final (or no non-final) state starts as one block.
    {
        bool any_final = false, any_non = false;
        for (auto f : in.finals) (f ? any_final : any_non) = true;
        if (!any_final || !any_non) {
            std::fill(block.begin(), block.end(), 0u);
            block_count = 1;
        }
    }

    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_block;
        std::vector<std::uint32_t> next_block(in.state_count);
        std::vector<std::uint32_t> sig(in.class_count + 1);
        for (std::uint32_t q = 0; q < in.state_count; ++q) {
            sig[0] = block[q];
            for (std::uint16_t c = 0; c < in.class_count; ++c) sig[c + 1] = block[in.next(q, c)];
            auto it = sig_block.find(sig);
            if (it == sig_block.end()) it = sig_block.emplace(sig, static_cast<std::uint32_t>(sig_block.size())).first;
            next_block[q] = it->second;
        }
        const auto nb = static_cast<std::uint32_t>(sig_block.size());
        block = std::move(next_block);
        if (nb == block_count) break;
        block_count = nb;
    }

    Dfa merged;
    merged.state_count = block_count;
    merged.start = block[in.start];
    merged.class_count = in.class_count;
    merged.classes = in.classes;
    merged.finals.assign(block_count, 0);
    merged.delta.assign(std::size_t(block_count) * in.class_count, 0);
    for (std::uint32_t q = 0; q < in.state_count; ++q) {
        merged.finals[block[q]] = in.finals[q];
        for (std::uint16_t c = 0; c < in.class_count; ++c)
            merged.delta[std::size_t(block[q]) * in.class_count + c] = block[in.next(q, c)];
    }
    return detail::renumber_bfs(merged);
}

inline std::uint32_t delta_string(const Dfa& dfa, std::uint32_t q, std::span<const std::uint16_t> classes) {
    for (auto c : classes) q = dfa.next(q, c);
    return q;
}

inline std::uint32_t delta_string(const Dfa& dfa, std::uint32_t q, std::u32string_view s) {
    for (auto cp : s) q = dfa.next(q, dfa.classes.class_of(cp));
    return q;
}

// Baseline scanner: runs the DFA over the whole input and reports every
// position p (0..len) whose consumed prefix lands in a final state. Reads
// each character exactly once, in order.
inline MatchReport forward_scan(const Dfa& dfa, std::u32string_view s) {
    MatchReport rep;
    std::uint32_t q = dfa.start;
    if (dfa.is_final(q)) rep.positions.push_back(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        q = dfa.next(q, dfa.classes.class_of(s[i]));
        if (dfa.is_final(q)) rep.positions.push_back(i + 1);
    }
    rep.chars_read = rep.iterations = s.size();
    return rep;
}

// States from which some final state is reachable (forward language
// non-empty). The complement is the dead set.
inline std::vector<std::uint8_t> alive_states(const Dfa& dfa) {
    std::vector<std::vector<std::uint32_t>> rev(dfa.state_count);
    for (std::uint32_t q = 0; q < dfa.state_count; ++q)
        for (std::uint16_t c = 0; c < dfa.class_count; ++c) rev[dfa.next(q, c)].push_back(q);
    std::vector<std::uint8_t> alive(dfa.state_count, 0);
    std::queue<std::uint32_t> work;
    for (std::uint32_t q = 0; q < dfa.state_count; ++q)
        if (dfa.is_final(q)) {
            alive[q] = 1;
            work.push(q);
        }
    while (!work.empty()) {
        const auto q = work.front();
        work.pop();
        for (auto p : rev[q])
            if (!alive[p]) {
                alive[p] = 1;
                work.push(p);
            }
    }
    return alive;
}

} // namespace ofa
