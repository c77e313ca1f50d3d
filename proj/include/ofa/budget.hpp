#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ofa {

// Resource limits for compilation. Lookahead growth stops at max_lookahead
// or when a trie is about to outgrow max_nodes_per_trie; determinization
// aborts past dfa_state_cap.
struct BudgetConfig {
    std::uint32_t max_lookahead = 12;
    std::uint64_t max_nodes_per_trie = 1u << 20;
    std::uint32_t dfa_state_cap = 1u << 20;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ofa
