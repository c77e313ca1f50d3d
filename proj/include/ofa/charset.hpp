#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ofa {

inline constexpr char32_t max_code_point = 0x10FFFF;

struct CpRange {
    char32_t lo;
    char32_t hi; // inclusive
    friend bool operator==(const CpRange&, const CpRange&) = default;
};

// Set of code points kept as sorted, disjoint, non-adjacent inclusive ranges.
struct CharSet {
    std::vector<CpRange> ranges;

    CharSet() = default;
    CharSet(char32_t lo, char32_t hi) { add(lo, hi); }
    explicit CharSet(char32_t cp) { add(cp, cp); }

    bool empty() const { return ranges.empty(); }

    // Insert [lo,hi], merging with overlapping or adjacent ranges.
    void add(char32_t lo, char32_t hi) {
        if (lo > hi) std::swap(lo, hi);
        CpRange r{lo, hi};
        auto it = ranges.begin();
        while (it != ranges.end()) {
            if (it->hi != max_code_point && it->hi + 1 < r.lo) {
                ++it;
                continue;
            }
            if (r.hi != max_code_point && r.hi + 1 < it->lo) break;
            r.lo = std::min(r.lo, it->lo);
            r.hi = std::max(r.hi, it->hi);
            it = ranges.erase(it);
        }
        ranges.insert(it, r);
    }

    void add(const CharSet& other) {
        for (const auto& r : other.ranges) add(r.lo, r.hi);
    }

    bool contains(char32_t cp) const {
        auto it = std::upper_bound(ranges.begin(), ranges.end(), cp,
                                   [](char32_t v, const CpRange& r) { return v < r.lo; });
        return it != ranges.begin() && cp <= std::prev(it)->hi;
    }

    CharSet complement() const {
        CharSet out;
        char32_t next = 0;
        bool open = true; // next..max still unclaimed
        for (const auto& r : ranges) {
            if (r.lo > next) out.ranges.push_back({next, r.lo - 1});
            if (r.hi == max_code_point) {
                open = false;
                break;
            }
            next = r.hi + 1;
        }
        if (open) out.ranges.push_back({next, max_code_point});
        return out;
    }

    bool intersects(char32_t lo, char32_t hi) const {
        auto it = std::upper_bound(ranges.begin(), ranges.end(), hi,
                                   [](char32_t v, const CpRange& r) { return v < r.lo; });
        return it != ranges.begin() && std::prev(it)->hi >= lo;
    }

    friend bool operator==(const CharSet&, const CharSet&) = default;
};

inline CharSet charset_full() { return CharSet(0, max_code_point); }

// "." matches everything except newline.
inline CharSet charset_any_except_newline() {
    CharSet out;
    out.add(0, U'\n' - 1);
    out.add(U'\n' + 1, max_code_point);
    return out;
}

} // namespace ofa
