#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ofa {

// Result of a scan over one input. positions are end positions in code
// points, strictly ascending. chars_read counts input reads and equals the
// number of loop iterations; a skipping matcher reads fewer than len(input)
// characters, a forward scanner exactly len(input). read_indices (when
// requested) lists every index read, in read order, never with duplicates.
struct MatchReport {
    std::vector<std::uint64_t> positions;
    std::uint64_t chars_read = 0;
    std::uint64_t iterations = 0;
    std::optional<std::vector<std::uint64_t>> read_indices;
};

} // namespace ofa
