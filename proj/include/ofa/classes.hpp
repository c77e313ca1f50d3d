#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "ofa/ast.hpp"

namespace ofa {

struct ClassRange {
    char32_t lo;
    char32_t hi;
    std::uint16_t cls;
    friend bool operator==(const ClassRange&, const ClassRange&) = default;
};

// Total map from code points to alphabet equivalence classes. Ranges are
// ascending, contiguous, and cover [0, max_code_point]; adjacent ranges never
// share a class id. Class ids are dense: each of [0, class_count) occurs.
struct ClassMap {
    std::vector<ClassRange> ranges;
    std::uint16_t class_count = 0;

    std::uint16_t class_of(char32_t cp) const {
        if (cp < 256) return fast_[cp];
        auto it = std::upper_bound(ranges.begin(), ranges.end(), cp,
                                   [](char32_t v, const ClassRange& r) { return v < r.lo; });
        return std::prev(it)->cls;
    }

    // Classes whose code points intersect the set. With maps built by
    // compute_equivalence_classes a class is either inside or outside every
    // CharSet of the source tree, so intersection equals containment.
    std::vector<std::uint16_t> classes_in(const CharSet& set) const {
        std::vector<bool> seen(class_count, false);
        std::vector<std::uint16_t> out;
        for (const auto& r : ranges) {
            if (!seen[r.cls] && set.intersects(r.lo, r.hi)) {
                seen[r.cls] = true;
                out.push_back(r.cls);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Smallest code point in the class; every class is non-empty.
    char32_t representative(std::uint16_t cls) const {
        for (const auto& r : ranges)
            if (r.cls == cls) return r.lo;
        return 0;
    }

    void build_fast_table() {
        for (const auto& r : ranges) {
            const char32_t hi = std::min<char32_t>(r.hi, 255);
            for (char32_t cp = r.lo; cp <= hi && cp < 256; ++cp) fast_[cp] = r.cls;
        }
    }

    friend bool operator==(const ClassMap& a, const ClassMap& b) {
        return a.class_count == b.class_count && a.ranges == b.ranges;
    }

  private:
    std::array<std::uint16_t, 256> fast_{};
};

// full: one extra class covers code points outside every CharSet (when any
// exist). pattern_only: the alphabet is the union of the tree's CharSets and
// out-of-alphabet code points fold into class 0; matching behaviour on inputs
// containing them is unspecified.
enum class AlphabetMode { full, pattern_only };

namespace detail {

inline void collect_charsets(const Ast& a, std::vector<const CharSet*>& out) {
    if (a.kind == AstKind::char_set) out.push_back(&a.set);
    for (const auto& c : a.children) collect_charsets(c, out);
}

} // namespace detail

// Coarsest partition of the code-point space in which no CharSet of the tree
// can tell two members of a class apart. Class ids are assigned in order of
// each class's lowest code point, so id 0 belongs to the lexicographically
// lowest range.
inline ClassMap compute_equivalence_classes(const Ast& ast, AlphabetMode mode = AlphabetMode::full) {
    std::vector<const CharSet*> sets;
    detail::collect_charsets(ast, sets);

    // Cut the space at every range boundary; inside one segment all code
    // points have the same membership signature.
    std::vector<char32_t> cuts{0};
    for (const auto* s : sets) {
        for (const auto& r : s->ranges) {
            cuts.push_back(r.lo);
            if (r.hi < max_code_point) cuts.push_back(r.hi + 1);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    ClassMap map;
    std::map<std::vector<bool>, std::uint16_t> class_of_sig;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const char32_t lo = cuts[i];
        const char32_t hi = i + 1 < cuts.size() ? cuts[i + 1] - 1 : max_code_point;
        std::vector<bool> sig(sets.size());
        bool in_alphabet = false;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            sig[k] = sets[k]->contains(lo);
            in_alphabet = in_alphabet || sig[k];
        }
        std::uint16_t cls;
        if (mode == AlphabetMode::pattern_only && !in_alphabet) {
            cls = 0;
        } else {
            auto it = class_of_sig.find(sig);
            if (it == class_of_sig.end())
                it = class_of_sig.emplace(std::move(sig), static_cast<std::uint16_t>(class_of_sig.size())).first;
            cls = it->second;
        }
        if (!map.ranges.empty() && map.ranges.back().cls == cls && map.ranges.back().hi + 1 == lo) {
            map.ranges.back().hi = hi;
        } else {
            map.ranges.push_back({lo, hi, cls});
        }
    }
    map.class_count = static_cast<std::uint16_t>(std::max<std::size_t>(class_of_sig.size(), 1));
    map.build_fast_table();
    return map;
}

} // namespace ofa
