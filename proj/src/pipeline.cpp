#include "netbatch/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "netbatch/baselines.hpp"
#include "netbatch/error.hpp"
#include "netbatch/evaluator.hpp"
#include "netbatch/parallel.hpp"

namespace netbatch {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

void validate_config(const PipelineConfig& config) {
    if (!config.model && config.n_batches < 1) fail(ErrorKind::Config, "batch count must be at least 1");
    if (config.max_batch_size == 0) fail(ErrorKind::Config, "max batch size must be positive");
    if (config.dense_threshold == 0) fail(ErrorKind::Config, "dense threshold must be positive");
    if (config.chunk && *config.chunk == 0) fail(ErrorKind::Config, "chunk size must be positive");
}

PipelineOutput run_pipeline(const Netlist& netlist, const PipelineConfig& config) {
    validate_config(config);
    const auto total_start = Clock::now();
    PipelineOutput out;
    PipelineStats& stats = out.stats;
    stats.n_nets = netlist.size();
    stats.workers = resolve_workers(config.workers);
    stats.used_model = config.model != nullptr;
    stats.n_initial_batches = config.model ? config.model->n_batches : config.n_batches;

    auto start = Clock::now();
    AssignmentVector assignment;
    if (config.model) {
        assignment = assign_batches(netlist, *config.model, {config.chunk, stats.workers});
    } else {
        assignment = fallback_assign(netlist, stats.n_initial_batches, config.seed);
    }
    const auto initial = group_by_batch(assignment, stats.n_initial_batches);
    stats.assign_ms = millis_since(start);

    start = Clock::now();
    stats.representation = select_representation(stats.n_initial_batches, netlist.grid, config.dense_threshold);
    EvaluationResult evaluation = evaluate_batches(initial, netlist, stats.representation, stats.workers);
    stats.rerouted = evaluation.nets2reroute.size();
    stats.conflict_free_fraction =
        stats.n_nets == 0 ? 1.0
                          : static_cast<double>(stats.n_nets - stats.rerouted) / static_cast<double>(stats.n_nets);
    stats.evaluate_ms = millis_since(start);

    start = Clock::now();
    ReallocOptions options;
    options.max_batch_size = config.max_batch_size;
    options.rep = stats.representation;
    options.workers = stats.workers;
    out.result = reallocate(std::move(evaluation), netlist, options);
    stats.reallocate_ms = millis_since(start);

    const ReallocationStats& r = out.result.stats;
    stats.placed_in_existing = r.placed_in_existing;
    stats.returned_by_revalidation = r.returned_by_revalidation;
    stats.new_batches = r.new_batches;
    stats.consolidation_merges = r.consolidation_merges;
    stats.final_batches = out.result.batches.size();
    for (const Batch& b : out.result.batches) stats.max_batch_size = std::max(stats.max_batch_size, b.size());
    stats.total_ms = millis_since(total_start);
    return out;
}

std::string ValidityReport::to_text() const {
    std::ostringstream out;
    for (NetId id : unknown) out << "unknown net " << id << '\n';
    for (NetId id : duplicated) out << "duplicated net " << id << '\n';
    for (NetId id : missing) out << "missing net " << id << '\n';
    for (const ConflictingPair& c : conflicts) {
        out << "conflict in batch " << c.batch << ": nets " << c.a << " and " << c.b << '\n';
    }
    return out.str();
}

ValidityReport validate_result(const std::vector<Batch>& batches, const Netlist& netlist) {
    ValidityReport report;
    const std::size_t n = netlist.size();
    std::vector<std::uint32_t> count(n, 0);
    std::vector<Rect> boxes(n);
    for (std::size_t i = 0; i < n; ++i) boxes[i] = bounding_box(netlist.nets[i]);

    for (std::size_t b = 0; b < batches.size(); ++b) {
        std::vector<NetId> known;
        known.reserve(batches[b].size());
        for (NetId id : batches[b]) {
            if (id < 0 || static_cast<std::size_t>(id) >= n) {
                report.unknown.push_back(id);
                continue;
            }
            if (count[static_cast<std::size_t>(id)]++ == 1) report.duplicated.push_back(id);
            known.push_back(id);
        }
        for (std::size_t i = 0; i < known.size(); ++i) {
            const auto a = static_cast<std::size_t>(known[i]);
            for (std::size_t j = i + 1; j < known.size(); ++j) {
                const auto c = static_cast<std::size_t>(known[j]);
                if (a == c) continue;  // reported as a duplicate
                if (!boxes[a].intersects(boxes[c])) continue;
                if (conflict_layer_aware(netlist.nets[a], netlist.nets[c])) {
                    report.conflicts.push_back({b, known[i], known[j]});
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (count[i] == 0) report.missing.push_back(static_cast<NetId>(i));
    }
    std::sort(report.duplicated.begin(), report.duplicated.end());
    return report;
}

std::vector<StrategyRow> compare_strategies(const Netlist& netlist, const PipelineConfig& config) {
    validate_config(config);
    std::vector<StrategyRow> rows;
    for (OverlapStrategy s :
         {OverlapStrategy::BoundingBox, OverlapStrategy::LayerAgnostic, OverlapStrategy::LayerAware}) {
        const auto start = Clock::now();
        const BatchingResult r = greedy_first_fit(netlist, s, config.max_batch_size);
        rows.push_back({std::string("first-fit/") + to_string(s), r.batches.size(), millis_since(start)});
    }
    const auto start = Clock::now();
    const PipelineOutput p = run_pipeline(netlist, config);
    rows.push_back({config.model ? "pipeline/model" : "pipeline/fallback", p.result.batches.size(),
                    millis_since(start)});
    return rows;
}

std::string comparison_to_text(const std::vector<StrategyRow>& rows) {
    std::ostringstream out;
    out << "strategy batches time_ms\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const StrategyRow& r : rows) out << r.name << ' ' << r.batches << ' ' << r.millis << '\n';
    return out.str();
}

}  // namespace netbatch
