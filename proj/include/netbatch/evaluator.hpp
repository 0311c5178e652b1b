#pragma once

#include <span>
#include <vector>

#include "netbatch/netlist.hpp"
#include "netbatch/occupancy.hpp"

namespace netbatch {

using Batch = std::vector<NetId>;

struct EvaluationResult {
    std::vector<Batch> accepted;       // same indexing as the input batches
    std::vector<NetId> nets2reroute;   // batch order, ascending id within a batch
    // Occupancy of each accepted batch, kept for reallocation.
    std::vector<OccupancyMap> occupancy;
};

// Visits `candidates` in the given order against `map`. Nets that collide with
// marked cells go to `rejected`; the rest are appended to `accepted` and
// marked. This is the one conflict-check path shared by evaluation and
// reallocation.
void screen_nets(OccupancyMap& map, std::span<const NetId> candidates, const Netlist& netlist,
                 std::vector<NetId>& accepted, std::vector<NetId>& rejected);

// Throws Validation when a batch names an id outside the netlist or repeats
// an id.
void check_batch_ids(std::span<const Batch> batches, const Netlist& netlist);

// Each batch gets a fresh map; nets are visited in ascending id. Batches are
// scheduled dynamically over `workers` threads and merged in index order.
EvaluationResult evaluate_batches(std::span<const Batch> batches, const Netlist& netlist,
                                  Representation rep, unsigned workers = 1);

}  // namespace netbatch
