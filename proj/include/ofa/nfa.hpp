#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ofa/ast.hpp"
#include "ofa/classes.hpp"

namespace ofa {

// Thompson-style NFA over class ids: one start, one accept, epsilon edges.
struct Nfa {
    struct Edge {
        std::uint16_t cls;
        std::uint32_t to;
    };
    std::uint32_t start = 0;
    std::uint32_t accept = 0;
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<std::uint32_t>> eps;

    std::uint32_t state_count() const { return static_cast<std::uint32_t>(edges.size()); }
};

namespace detail {

struct NfaBuilder {
    Nfa nfa;
    const ClassMap& map;

    explicit NfaBuilder(const ClassMap& m) : map(m) {}

    std::uint32_t add_state() {
        nfa.edges.emplace_back();
        nfa.eps.emplace_back();
        return static_cast<std::uint32_t>(nfa.edges.size() - 1);
    }

    struct Frag {
        std::uint32_t in, out;
    };

    Frag build(const Ast& a) {
        switch (a.kind) {
            case AstKind::epsilon: {
                const auto s = add_state(), t = add_state();
                nfa.eps[s].push_back(t);
                return {s, t};
            }
            case AstKind::char_set: {
                const auto s = add_state(), t = add_state();
                for (auto cls : map.classes_in(a.set)) nfa.edges[s].push_back({cls, t});
                return {s, t};
            }
            case AstKind::concat: {
                Frag f = build(a.children.front());
                for (std::size_t i = 1; i < a.children.size(); ++i) {
                    Frag g = build(a.children[i]);
                    nfa.eps[f.out].push_back(g.in);
                    f.out = g.out;
                }
                return f;
            }
            case AstKind::alt: {
                const auto s = add_state(), t = add_state();
                for (const auto& c : a.children) {
                    Frag f = build(c);
                    nfa.eps[s].push_back(f.in);
                    nfa.eps[f.out].push_back(t);
                }
                return {s, t};
            }
            case AstKind::star: {
                const auto s = add_state(), t = add_state();
                Frag f = build(a.children.front());
                nfa.eps[s].push_back(f.in);
                nfa.eps[s].push_back(t);
                nfa.eps[f.out].push_back(f.in);
                nfa.eps[f.out].push_back(t);
                return {s, t};
            }
            case AstKind::plus: {
                const auto s = add_state(), t = add_state();
                Frag f = build(a.children.front());
                nfa.eps[s].push_back(f.in);
                nfa.eps[f.out].push_back(f.in);
                nfa.eps[f.out].push_back(t);
                return {s, t};
            }
        }
        return {0, 0}; // unreachable
    }
};

} // namespace detail

inline Nfa build_nfa(const Ast& ast, const ClassMap& map) {
    detail::NfaBuilder b(map);
    auto frag = b.build(ast);
    b.nfa.start = frag.in;
    b.nfa.accept = frag.out;
    return b.nfa;
}

// Set simulation; test and oracle use, not a hot path.
inline bool nfa_accepts(const Nfa& nfa, std::span<const std::uint16_t> classes) {
    std::vector<bool> cur(nfa.state_count(), false);
    std::vector<std::uint32_t> stack;
    auto add = [&](std::uint32_t s) {
        if (!cur[s]) {
            cur[s] = true;
            stack.push_back(s);
        }
    };
    add(nfa.start);
    auto close = [&] {
        while (!stack.empty()) {
            const auto s = stack.back();
            stack.pop_back();
            for (auto t : nfa.eps[s]) add(t);
        }
    };
    close();
    for (auto cls : classes) {
        std::vector<bool> next(nfa.state_count(), false);
        std::vector<std::uint32_t> ns;
        for (std::uint32_t s = 0; s < nfa.state_count(); ++s) {
            if (!cur[s]) continue;
            for (const auto& e : nfa.edges[s])
                if (e.cls == cls && !next[e.to]) {
                    next[e.to] = true;
                    ns.push_back(e.to);
                }
        }
        cur = std::move(next);
        stack = std::move(ns);
        close();
    }
    return cur[nfa.accept];
}

} // namespace ofa
