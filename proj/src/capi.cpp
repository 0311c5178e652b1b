#include <algorithm>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "netbatch/error.hpp"
#include "netbatch/initial_batcher.hpp"
#include "netbatch/io.hpp"
#include "netbatch/netbatch.h"
#include "netbatch/netlist.hpp"
#include "netbatch/pipeline.hpp"

struct nb_netlist {
    netbatch::Netlist value;
};

struct nb_model {
    netbatch::GeneratorModel value;
};

struct nb_result {
    std::vector<netbatch::Batch> batches;
    std::optional<netbatch::PipelineStats> stats;
};

struct nb_report {
    netbatch::ValidityReport value;
    std::string text;
};

struct nb_comparison {
    std::vector<netbatch::StrategyRow> rows;
    std::string text;
};

namespace {

thread_local std::string g_last_error;

nb_status status_for(netbatch::ErrorKind kind) {
    using netbatch::ErrorKind;
    switch (kind) {
        case ErrorKind::Parse: return NB_ERR_PARSE;
        case ErrorKind::Validation: return NB_ERR_VALIDATION;
        case ErrorKind::Index: return NB_ERR_INDEX;
        case ErrorKind::Generation: return NB_ERR_GENERATION;
        case ErrorKind::Model: return NB_ERR_MODEL;
        case ErrorKind::Config: return NB_ERR_CONFIG;
        case ErrorKind::Io: return NB_ERR_IO;
    }
    return NB_ERR_INTERNAL;
}

nb_status set_error(nb_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs fn, translating exceptions into status codes at the ABI boundary.
template <typename Fn>
nb_status guarded(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        fn();
        return NB_OK;
    } catch (const netbatch::Error& e) {
        return set_error(status_for(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(NB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(NB_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(NB_ERR_INTERNAL, "unknown failure");
    }
}

nb_status null_argument(const char* name) {
    return set_error(NB_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

netbatch::PipelineConfig to_pipeline_config(const nb_config* config, const nb_model* model) {
    nb_config defaults;
    nb_config_init(&defaults);
    const nb_config& c = config ? *config : defaults;
    netbatch::PipelineConfig out;
    out.model = model ? &model->value : nullptr;
    out.n_batches = c.n_batches;
    out.max_batch_size = c.max_batch_size;
    out.dense_threshold = c.dense_threshold;
    out.workers = c.workers;
    out.seed = c.seed;
    if (c.chunk_size > 0) out.chunk = c.chunk_size;
    return out;
}

}  // namespace

extern "C" {

const char* nb_version(void) { return "1.0.0"; }

const char* nb_last_error(void) { return g_last_error.c_str(); }

const char* nb_status_name(nb_status status) {
    switch (status) {
        case NB_OK: return "ok";
        case NB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case NB_ERR_PARSE: return "parse error";
        case NB_ERR_VALIDATION: return "validation error";
        case NB_ERR_INDEX: return "index error";
        case NB_ERR_GENERATION: return "generation error";
        case NB_ERR_MODEL: return "model error";
        case NB_ERR_CONFIG: return "configuration error";
        case NB_ERR_IO: return "i/o error";
        case NB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void nb_config_init(nb_config* config) {
    if (!config) return;
    config->n_batches = 30;
    config->max_batch_size = static_cast<uint32_t>(netbatch::kDefaultMaxBatchSize);
    config->dense_threshold = netbatch::kDefaultDenseThreshold;
    config->workers = 0;
    config->seed = 0;
    config->chunk_size = 0;
}

nb_status nb_netlist_read(const char* path, nb_netlist** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new nb_netlist{netbatch::read_netlist_file(path)}; });
}

nb_status nb_netlist_parse(const char* text, size_t length, nb_netlist** out) {
    if (!text && length > 0) return null_argument("text");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        *out = new nb_netlist{netbatch::parse_netlist_text(std::string(text ? text : "", length))};
    });
}

nb_status nb_netlist_generate(nb_grid grid, uint32_t n_nets, uint32_t min_pins, uint32_t max_pins, uint64_t seed,
                              nb_netlist** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        netbatch::SyntheticSpec spec;
        spec.grid = {grid.x, grid.y, grid.layers};
        spec.n_nets = n_nets;
        spec.min_pins = min_pins;
        spec.max_pins = max_pins;
        spec.seed = seed;
        *out = new nb_netlist{netbatch::generate_synthetic(spec)};
    });
}

nb_status nb_netlist_write(const nb_netlist* netlist, const char* path) {
    if (!netlist) return null_argument("netlist");
    if (!path) return null_argument("path");
    return guarded([&] { netbatch::write_netlist_file(path, netlist->value); });
}

size_t nb_netlist_net_count(const nb_netlist* netlist) { return netlist ? netlist->value.size() : 0; }

nb_grid nb_netlist_grid(const nb_netlist* netlist) {
    if (!netlist) return {0, 0, 0};
    const auto& g = netlist->value.grid;
    return {g.x, g.y, g.layers};
}

void nb_netlist_free(nb_netlist* netlist) { delete netlist; }

nb_status nb_model_read(const char* path, nb_model** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new nb_model{netbatch::load_model_file(path)}; });
}

uint32_t nb_model_batch_count(const nb_model* model) { return model ? model->value.n_batches : 0; }

void nb_model_free(nb_model* model) { delete model; }

nb_status nb_batch(const nb_netlist* netlist, const nb_model* model, const nb_config* config, nb_result** out) {
    if (!netlist) return null_argument("netlist");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        netbatch::PipelineOutput run = netbatch::run_pipeline(netlist->value, to_pipeline_config(config, model));
        *out = new nb_result{std::move(run.result.batches), run.stats};
    });
}

nb_status nb_result_read(const char* path, nb_result** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new nb_result{netbatch::read_batches_file(path), std::nullopt}; });
}

nb_status nb_result_write(const nb_result* result, const char* path) {
    if (!result) return null_argument("result");
    if (!path) return null_argument("path");
    return guarded([&] { netbatch::write_batches_file(path, result->batches); });
}

nb_status nb_result_write_stats(const nb_result* result, const char* path, nb_stats_format format) {
    if (!result) return null_argument("result");
    if (!path) return null_argument("path");
    if (!result->stats) return set_error(NB_ERR_INVALID_ARGUMENT, "result carries no statistics");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) netbatch::fail(netbatch::ErrorKind::Io, std::string("cannot write '") + path + "'");
        out << (format == NB_STATS_JSON ? netbatch::stats_to_json(*result->stats)
                                        : netbatch::stats_to_text(*result->stats));
        if (!out) netbatch::fail(netbatch::ErrorKind::Io, std::string("write failed for '") + path + "'");
    });
}

nb_status nb_result_stats(const nb_result* result, nb_stats* out) {
    if (!result) return null_argument("result");
    if (!out) return null_argument("out");
    if (!result->stats) return set_error(NB_ERR_INVALID_ARGUMENT, "result carries no statistics");
    const netbatch::PipelineStats& s = *result->stats;
    out->n_nets = s.n_nets;
    out->n_initial_batches = s.n_initial_batches;
    out->used_model = s.used_model ? 1 : 0;
    out->conflict_free_fraction = s.conflict_free_fraction;
    out->rerouted = s.rerouted;
    out->placed_in_existing = s.placed_in_existing;
    out->new_batches = s.new_batches;
    out->consolidation_merges = s.consolidation_merges;
    out->final_batches = s.final_batches;
    out->assign_ms = s.assign_ms;
    out->evaluate_ms = s.evaluate_ms;
    out->reallocate_ms = s.reallocate_ms;
    out->total_ms = s.total_ms;
    out->sparse = s.representation == netbatch::Representation::Sparse ? 1 : 0;
    out->workers = s.workers;
    return NB_OK;
}

size_t nb_result_batch_count(const nb_result* result) { return result ? result->batches.size() : 0; }

size_t nb_result_batch_size(const nb_result* result, size_t batch) {
    if (!result || batch >= result->batches.size()) return 0;
    return result->batches[batch].size();
}

size_t nb_result_batch_nets(const nb_result* result, size_t batch, int32_t* ids, size_t capacity) {
    if (!result || !ids || batch >= result->batches.size()) return 0;
    const auto& b = result->batches[batch];
    const size_t n = std::min(capacity, b.size());
    std::copy_n(b.begin(), n, ids);
    return n;
}

void nb_result_free(nb_result* result) { delete result; }

nb_status nb_validate(const nb_netlist* netlist, const nb_result* result, nb_report** out) {
    if (!netlist) return null_argument("netlist");
    if (!result) return null_argument("result");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto* report = new nb_report{netbatch::validate_result(result->batches, netlist->value), {}};
        report->text = report->value.to_text();
        *out = report;
    });
}

int nb_report_is_valid(const nb_report* report) { return report && report->value.valid() ? 1 : 0; }

size_t nb_report_violation_count(const nb_report* report) {
    return report ? report->value.violation_count() : 0;
}

const char* nb_report_text(const nb_report* report) { return report ? report->text.c_str() : ""; }

void nb_report_free(nb_report* report) { delete report; }

nb_status nb_compare(const nb_netlist* netlist, const nb_model* model, const nb_config* config,
                     nb_comparison** out) {
    if (!netlist) return null_argument("netlist");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto rows = netbatch::compare_strategies(netlist->value, to_pipeline_config(config, model));
        auto* cmp = new nb_comparison{std::move(rows), {}};
        cmp->text = netbatch::comparison_to_text(cmp->rows);
        *out = cmp;
    });
}

size_t nb_comparison_row_count(const nb_comparison* comparison) {
    return comparison ? comparison->rows.size() : 0;
}

const char* nb_comparison_row_name(const nb_comparison* comparison, size_t row) {
    if (!comparison || row >= comparison->rows.size()) return "";
    return comparison->rows[row].name.c_str();
}

size_t nb_comparison_row_batches(const nb_comparison* comparison, size_t row) {
    if (!comparison || row >= comparison->rows.size()) return 0;
    return comparison->rows[row].batches;
}

double nb_comparison_row_millis(const nb_comparison* comparison, size_t row) {
    if (!comparison || row >= comparison->rows.size()) return 0.0;
    return comparison->rows[row].millis;
}

const char* nb_comparison_text(const nb_comparison* comparison) {
    return comparison ? comparison->text.c_str() : "";
}

void nb_comparison_free(nb_comparison* comparison) { delete comparison; }

nb_status nb_export_training(const nb_netlist* netlist, const nb_result* result, uint32_t min_batch_size,
                             const char* nets_path, const char* edges_path, size_t* exported_nets) {
    if (!netlist) return null_argument("netlist");
    if (!result) return null_argument("result");
    if (!nets_path) return null_argument("nets_path");
    if (!edges_path) return null_argument("edges_path");
    return guarded([&] {
        const auto summary =
            netbatch::export_training_files(netlist->value, result->batches, min_batch_size, nets_path, edges_path);
        if (exported_nets) *exported_nets = summary.nets;
    });
}

}  // extern "C"
