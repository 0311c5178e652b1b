#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "netbatch/evaluator.hpp"
#include "netbatch/netlist.hpp"
#include "netbatch/occupancy.hpp"

namespace netbatch {

inline constexpr std::size_t kDefaultMaxBatchSize = 4096;
inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct ReallocationStats {
    std::size_t initial_batches = 0;
    std::size_t rerouted = 0;
    std::size_t placed_in_existing = 0;
    std::size_t returned_by_revalidation = 0;
    std::size_t new_batches = 0;
    std::size_t consolidation_merges = 0;
};

struct BatchingResult {
    std::vector<Batch> batches;  // ids ascend within each batch
    ReallocationStats stats;
};

struct ReallocOptions {
    std::size_t max_batch_size = kDefaultMaxBatchSize;
    Representation rep = Representation::Sparse;
    unsigned workers = 1;
    // Lets consolidation grow batches past max_batch_size.
    bool allow_consolidation_overflow = false;
};

// Small-batch size limit for consolidation: 5 up to 10^7 nets, 10 above.
std::size_t consolidation_threshold(std::size_t total_nets);

// Opens batches one after another; each takes every remaining net (in the
// given order) that fits and does not collide with what it already holds.
std::vector<Batch> exhaustive_new_batches(std::span<const NetId> pending, const Netlist& netlist,
                                          std::size_t max_batch_size = kUnlimited,
                                          Representation rep = Representation::Sparse);

// Merges batches of at most consolidation_threshold(total_nets) nets into the
// earliest compatible small batch, keeping every batch conflict-free.
std::vector<Batch> consolidate(std::vector<Batch> batches, std::size_t total_nets, const Netlist& netlist,
                               std::size_t max_batch_size = kUnlimited, std::size_t* merges = nullptr);

// First-fit of the reroute nets into existing batches, re-validation of the
// tentative placements per batch, new batches for whatever is left, then
// consolidation. Consumes the evaluation's per-batch occupancy.
BatchingResult reallocate(EvaluationResult evaluation, const Netlist& netlist, const ReallocOptions& options);

// Same, rebuilding occupancy from already accepted batches.
BatchingResult reallocate(std::span<const NetId> nets2reroute, std::span<const Batch> accepted,
                          const Netlist& netlist, const ReallocOptions& options);

}  // namespace netbatch
