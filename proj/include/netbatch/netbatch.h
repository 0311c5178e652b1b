/*
 * netbatch C API.
 *
 * Every object is an opaque handle owned by the caller and released with its
 * matching *_free function. Functions return nb_status; on failure the
 * message is available from nb_last_error() on the same thread.
 */
#ifndef NETBATCH_H
#define NETBATCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NETBATCH_BUILDING)
#    define NB_API __declspec(dllexport)
#  else
#    define NB_API __declspec(dllimport)
#  endif
#else
#  define NB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nb_status {
    NB_OK = 0,
    NB_ERR_INVALID_ARGUMENT = 1,
    NB_ERR_PARSE = 2,
    NB_ERR_VALIDATION = 3,
    NB_ERR_INDEX = 4,
    NB_ERR_GENERATION = 5,
    NB_ERR_MODEL = 6,
    NB_ERR_CONFIG = 7,
    NB_ERR_IO = 8,
    NB_ERR_INTERNAL = 99
} nb_status;

typedef struct nb_netlist nb_netlist;
typedef struct nb_model nb_model;
typedef struct nb_result nb_result;
typedef struct nb_report nb_report;
typedef struct nb_comparison nb_comparison;

typedef struct nb_grid {
    int32_t x;
    int32_t y;
    int32_t layers;
} nb_grid;

typedef struct nb_config {
    uint32_t n_batches;        /* initial batches when no model is given */
    uint32_t max_batch_size;
    uint64_t dense_threshold;  /* total cells before switching to sparse maps */
    uint32_t workers;          /* 0: all hardware threads */
    uint64_t seed;
    uint32_t chunk_size;       /* 0: adaptive */
} nb_config;

typedef struct nb_stats {
    uint64_t n_nets;
    uint32_t n_initial_batches;
    int used_model;
    double conflict_free_fraction;
    uint64_t rerouted;
    uint64_t placed_in_existing;
    uint64_t new_batches;
    uint64_t consolidation_merges;
    uint64_t final_batches;
    double assign_ms;
    double evaluate_ms;
    double reallocate_ms;
    double total_ms;
    int sparse;  /* 1 when sparse occupancy was selected */
    uint32_t workers;
} nb_stats;

typedef enum nb_stats_format { NB_STATS_TEXT = 0, NB_STATS_JSON = 1 } nb_stats_format;

NB_API const char* nb_version(void);
NB_API const char* nb_last_error(void);
NB_API const char* nb_status_name(nb_status status);

/* Fills the documented defaults: 30 batches, 4096 max batch size, 2^28
 * threshold, all cores, seed 0, adaptive chunks. */
NB_API void nb_config_init(nb_config* config);

/* Netlists */
NB_API nb_status nb_netlist_read(const char* path, nb_netlist** out);
NB_API nb_status nb_netlist_parse(const char* text, size_t length, nb_netlist** out);
NB_API nb_status nb_netlist_generate(nb_grid grid, uint32_t n_nets, uint32_t min_pins, uint32_t max_pins,
                                     uint64_t seed, nb_netlist** out);
NB_API nb_status nb_netlist_write(const nb_netlist* netlist, const char* path);
NB_API size_t nb_netlist_net_count(const nb_netlist* netlist);
NB_API nb_grid nb_netlist_grid(const nb_netlist* netlist);
NB_API void nb_netlist_free(nb_netlist* netlist);

/* Generator models */
NB_API nb_status nb_model_read(const char* path, nb_model** out);
NB_API uint32_t nb_model_batch_count(const nb_model* model);
NB_API void nb_model_free(nb_model* model);

/* Batching; model may be NULL for the model-free assignment. */
NB_API nb_status nb_batch(const nb_netlist* netlist, const nb_model* model, const nb_config* config,
                          nb_result** out);
NB_API nb_status nb_result_read(const char* path, nb_result** out);
NB_API nb_status nb_result_write(const nb_result* result, const char* path);
NB_API nb_status nb_result_write_stats(const nb_result* result, const char* path, nb_stats_format format);
/* NB_ERR_INVALID_ARGUMENT for results read from a file, which carry no stats. */
NB_API nb_status nb_result_stats(const nb_result* result, nb_stats* out);
NB_API size_t nb_result_batch_count(const nb_result* result);
NB_API size_t nb_result_batch_size(const nb_result* result, size_t batch);
/* Copies up to `capacity` ids of one batch; returns the number copied. */
NB_API size_t nb_result_batch_nets(const nb_result* result, size_t batch, int32_t* ids, size_t capacity);
NB_API void nb_result_free(nb_result* result);

/* Validation */
NB_API nb_status nb_validate(const nb_netlist* netlist, const nb_result* result, nb_report** out);
NB_API int nb_report_is_valid(const nb_report* report);
NB_API size_t nb_report_violation_count(const nb_report* report);
/* Human-readable listing; valid until the report is freed. */
NB_API const char* nb_report_text(const nb_report* report);
NB_API void nb_report_free(nb_report* report);

/* Strategy comparison */
NB_API nb_status nb_compare(const nb_netlist* netlist, const nb_model* model, const nb_config* config,
                            nb_comparison** out);
NB_API size_t nb_comparison_row_count(const nb_comparison* comparison);
NB_API const char* nb_comparison_row_name(const nb_comparison* comparison, size_t row);
NB_API size_t nb_comparison_row_batches(const nb_comparison* comparison, size_t row);
NB_API double nb_comparison_row_millis(const nb_comparison* comparison, size_t row);
NB_API const char* nb_comparison_text(const nb_comparison* comparison);
NB_API void nb_comparison_free(nb_comparison* comparison);

/* Training data export; exported_nets may be NULL. */
NB_API nb_status nb_export_training(const nb_netlist* netlist, const nb_result* result, uint32_t min_batch_size,
                                    const char* nets_path, const char* edges_path, size_t* exported_nets);

#ifdef __cplusplus
}
#endif

#endif /* NETBATCH_H */
