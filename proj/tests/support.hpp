#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the occupancy maps or the overlap predicates it is used to check.

#include <cstdint>
#include <string>
#include <vector>

#include "netbatch/evaluator.hpp"
#include "netbatch/netlist.hpp"

namespace netbatch::testing {

std::string data_path(const std::string& name);

// Black, blue, green and red nets (ids 0..3) whose segments are aligned in 2D
// on different layers.
Netlist four_aligned_nets();

Netlist random_instance(std::uint64_t seed, std::uint32_t n_nets, GridDims grid, std::uint32_t min_pins = 2,
                        std::uint32_t max_pins = 8);

// Every (x, y, layer) cell a net occupies, packed as layer<<42 | x<<21 | y,
// sorted and unique.
std::vector<std::uint64_t> occupied_cells(const Net& net);

// Cell-set intersection of two nets' footprints on the same layer.
bool cells_collide(const Net& a, const Net& b);

// Number of same-batch pairs whose footprints collide.
std::size_t count_batch_conflicts(const std::vector<Batch>& batches, const Netlist& netlist);

// True iff the batches contain every id in [0, n) exactly once.
bool is_partition(const std::vector<Batch>& batches, std::size_t n);

// Minimum rectilinear spanning-tree length by enumerating every (k-1)-edge
// subset of the complete graph. Only for k <= 6.
std::int64_t brute_force_rmst_length(const std::vector<Pin>& pins);

// Union of segments and pins forms one connected set of 2D cells.
bool segments_connect_pins(const Net& net);

}  // namespace netbatch::testing
