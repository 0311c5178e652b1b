#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbatch/initial_batcher.hpp"
#include "netbatch/occupancy.hpp"
#include "netbatch/overlap.hpp"
#include "netbatch/reallocator.hpp"

namespace netbatch {

struct PipelineConfig {
    const GeneratorModel* model = nullptr;  // fallback_assign when null
    std::uint32_t n_batches = 30;           // ignored when a model is given
    std::size_t max_batch_size = kDefaultMaxBatchSize;
    std::uint64_t dense_threshold = kDefaultDenseThreshold;
    unsigned workers = 0;  // 0: all hardware threads
    std::uint64_t seed = 0;
    std::optional<std::size_t> chunk;  // inference chunk override
};

void validate_config(const PipelineConfig& config);

struct PipelineStats {
    std::size_t n_nets = 0;
    std::uint32_t n_initial_batches = 0;
    bool used_model = false;
    double conflict_free_fraction = 1.0;  // accepted after evaluation / n_nets
    std::size_t rerouted = 0;
    std::size_t placed_in_existing = 0;
    std::size_t returned_by_revalidation = 0;
    std::size_t new_batches = 0;
    std::size_t consolidation_merges = 0;
    std::size_t final_batches = 0;
    std::size_t max_batch_size = 0;  // largest final batch
    double assign_ms = 0.0;
    double evaluate_ms = 0.0;
    double reallocate_ms = 0.0;
    double total_ms = 0.0;
    Representation representation = Representation::Dense;
    unsigned workers = 1;
};

struct PipelineOutput {
    BatchingResult result;
    PipelineStats stats;
};

// Initial assignment, layer-aware evaluation, then greedy reallocation.
PipelineOutput run_pipeline(const Netlist& netlist, const PipelineConfig& config);

struct ConflictingPair {
    std::size_t batch = 0;
    NetId a = 0;
    NetId b = 0;
};

struct ValidityReport {
    std::vector<NetId> missing;
    std::vector<NetId> duplicated;
    std::vector<NetId> unknown;
    std::vector<ConflictingPair> conflicts;

    bool valid() const { return missing.empty() && duplicated.empty() && unknown.empty() && conflicts.empty(); }
    std::size_t violation_count() const {
        return missing.size() + duplicated.size() + unknown.size() + conflicts.size();
    }
    std::string to_text() const;
};

// Partition check plus an all-pairs layer-aware check inside every batch.
ValidityReport validate_result(const std::vector<Batch>& batches, const Netlist& netlist);

struct StrategyRow {
    std::string name;
    std::size_t batches = 0;
    double millis = 0.0;
};

// First-fit under each overlap predicate, then the full pipeline; every run
// uses the config's batch size cap.
std::vector<StrategyRow> compare_strategies(const Netlist& netlist, const PipelineConfig& config);

std::string comparison_to_text(const std::vector<StrategyRow>& rows);

}  // namespace netbatch
