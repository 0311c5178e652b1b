#pragma once

#include "netbatch/overlap.hpp"
#include "netbatch/reallocator.hpp"

namespace netbatch {

// Nets in ascending id go to the first batch holding no conflicting net under
// `strategy` (and with room left); a new batch opens otherwise.
// The layer-aware variant checks per-batch occupancy maps. The other two
// evaluate the literal pairwise predicate against nearby nets found through
// a coarse bucket grid.
BatchingResult greedy_first_fit(const Netlist& netlist, OverlapStrategy strategy,
                                std::size_t max_batch_size = kUnlimited);

}  // namespace netbatch
