#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netbatch/evaluator.hpp"
#include "netbatch/pipeline.hpp"

namespace netbatch {

// "batch <index>: <id> <id> ..." per line, indices 0.. in order.
void write_batches(std::ostream& out, const std::vector<Batch>& batches);
std::vector<Batch> parse_batches(std::istream& in);
void write_batches_file(const std::string& path, const std::vector<Batch>& batches);
std::vector<Batch> read_batches_file(const std::string& path);

// "key = value" lines with the key names documented in the README.
std::string stats_to_text(const PipelineStats& stats);
std::string stats_to_json(const PipelineStats& stats);

struct TrainingExport {
    std::size_t batches = 0;
    std::size_t nets = 0;
    std::size_t edges = 0;
};

inline constexpr std::size_t kDefaultExportMinBatch = 160;

// Keeps batches with at least `min_batch_size` nets. The nets file holds
//   grid <x> <y> <layers>
//   net <id> <n_pins> <batch> <hpwl>
// followed by that net's pin/hseg/vseg lines, batches relabelled 0.. in
// order. The edge file lists layer-aware conflicting pairs among exported
// nets as "<i> <j>" with original ids.
TrainingExport export_training(const Netlist& netlist, const std::vector<Batch>& batches,
                               std::size_t min_batch_size, std::ostream& nets_out, std::ostream& edges_out);
TrainingExport export_training_files(const Netlist& netlist, const std::vector<Batch>& batches,
                                     std::size_t min_batch_size, const std::string& nets_path,
                                     const std::string& edges_path);

}  // namespace netbatch
