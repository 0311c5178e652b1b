// Command-line front end over the netbatch C API.

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netbatch/netbatch.h"

namespace {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitInput = 4,
    kExitInternal = 5,
};

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using NetlistPtr = std::unique_ptr<nb_netlist, Deleter<nb_netlist, nb_netlist_free>>;
using ModelPtr = std::unique_ptr<nb_model, Deleter<nb_model, nb_model_free>>;
using ResultPtr = std::unique_ptr<nb_result, Deleter<nb_result, nb_result_free>>;
using ReportPtr = std::unique_ptr<nb_report, Deleter<nb_report, nb_report_free>>;
using ComparisonPtr = std::unique_ptr<nb_comparison, Deleter<nb_comparison, nb_comparison_free>>;

int exit_code_for(nb_status status) {
    switch (status) {
        case NB_OK: return kExitOk;
        case NB_ERR_VALIDATION: return kExitInvalid;
        case NB_ERR_INVALID_ARGUMENT:
        case NB_ERR_CONFIG: return kExitUsage;
        case NB_ERR_IO: return kExitIo;
        case NB_ERR_PARSE:
        case NB_ERR_INDEX:
        case NB_ERR_GENERATION:
        case NB_ERR_MODEL: return kExitInput;
        case NB_ERR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

// Thrown out of a subcommand to stop with a specific exit code.
struct Abort {
    int code;
};

void check(nb_status status) {
    if (status == NB_OK) return;
    std::fprintf(stderr, "netbatch: %s: %s\n", nb_status_name(status), nb_last_error());
    throw Abort{exit_code_for(status)};
}

struct ConfigFlags {
    uint32_t batches = 30;
    uint32_t max_batch_size = 4096;
    uint64_t threshold = uint64_t{1} << 28;
    uint32_t workers = 0;
    uint64_t seed = 0;
    uint32_t chunk = 0;
    std::string model;

    void attach(CLI::App* cmd) {
        cmd->add_option("-B,--batches", batches, "Initial batch count without a model")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-batch-size", max_batch_size, "Largest allowed batch")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threshold", threshold, "Total cells across maps before sparse occupancy")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("-j,--workers", workers, "Worker threads (0: all cores)")->capture_default_str();
        cmd->add_option("--seed", seed, "Seed for the model-free assignment")->capture_default_str();
        cmd->add_option("--chunk", chunk, "Inference chunk size (0: adaptive)")->capture_default_str();
        cmd->add_option("-m,--model", model, "Generator model file")->check(CLI::ExistingFile);
    }

    nb_config to_config() const {
        nb_config c;
        nb_config_init(&c);
        c.n_batches = batches;
        c.max_batch_size = max_batch_size;
        c.dense_threshold = threshold;
        c.workers = workers;
        c.seed = seed;
        c.chunk_size = chunk;
        return c;
    }

    ModelPtr load_model() const {
        if (model.empty()) return ModelPtr{};
        nb_model* m = nullptr;
        check(nb_model_read(model.c_str(), &m));
        return ModelPtr{m};
    }
};

NetlistPtr load_netlist(const std::string& path) {
    nb_netlist* n = nullptr;
    check(nb_netlist_read(path.c_str(), &n));
    return NetlistPtr{n};
}

ResultPtr load_batches(const std::string& path) {
    nb_result* r = nullptr;
    check(nb_result_read(path.c_str(), &r));
    return ResultPtr{r};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conflict-free net batching for parallel global routing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nb_version());

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic netlist");
    std::vector<int32_t> grid{100, 100, 6};
    uint32_t n_nets = 1000;
    std::vector<uint32_t> pins{2, 8};
    uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--grid", grid, "Grid size: X Y LAYERS")->expected(3)->capture_default_str();
    gen->add_option("--nets", n_nets, "Number of nets")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--pins", pins, "Pins per net: MIN MAX")->expected(2)->capture_default_str();
    gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen->add_option("-o,--out", gen_out, "Output netlist file")->required();

    // batch
    auto* batch = app.add_subcommand("batch", "Partition a netlist into conflict-free batches");
    ConfigFlags batch_flags;
    std::string batch_in, batch_out, stats_out, stats_json_out;
    bool verify = false;
    batch->add_option("-i,--netlist", batch_in, "Input netlist")->required()->check(CLI::ExistingFile);
    batch->add_option("-o,--out", batch_out, "Output batch file")->required();
    batch->add_option("--stats", stats_out, "Write key = value statistics here");
    batch->add_option("--stats-json", stats_json_out, "Write JSON statistics here");
    batch->add_flag("--verify", verify, "Run the all-pairs validity check on the result");
    batch_flags.attach(batch);

    // validate
    auto* validate = app.add_subcommand("validate", "Check a batch file against its netlist");
    std::string val_netlist, val_batches;
    validate->add_option("-i,--netlist", val_netlist, "Netlist")->required()->check(CLI::ExistingFile);
    validate->add_option("-b,--batches", val_batches, "Batch file")->required()->check(CLI::ExistingFile);

    // compare
    auto* compare = app.add_subcommand("compare", "Batch counts under each overlap strategy");
    ConfigFlags cmp_flags;
    std::string cmp_in, cmp_out;
    compare->add_option("-i,--netlist", cmp_in, "Input netlist")->required()->check(CLI::ExistingFile);
    compare->add_option("-o,--out", cmp_out, "Also write the table here");
    cmp_flags.attach(compare);

    // export-training
    auto* export_cmd = app.add_subcommand("export-training", "Write training records for the generator");
    std::string exp_netlist, exp_batches, exp_nets, exp_edges;
    uint32_t min_batch = 160;
    export_cmd->add_option("-i,--netlist", exp_netlist, "Netlist")->required()->check(CLI::ExistingFile);
    export_cmd->add_option("-b,--batches", exp_batches, "Batch file")->required()->check(CLI::ExistingFile);
    export_cmd->add_option("--min-batch-size", min_batch, "Keep batches with at least this many nets")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    export_cmd->add_option("--nets-out", exp_nets, "Per-net records")->required();
    export_cmd->add_option("--edges-out", exp_edges, "Conflict edge list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            if (pins[0] < 1 || pins[0] > pins[1]) {
                std::fprintf(stderr, "netbatch: --pins needs 1 <= MIN <= MAX\n");
                return kExitUsage;
            }
            nb_netlist* n = nullptr;
            check(nb_netlist_generate({grid[0], grid[1], grid[2]}, n_nets, pins[0], pins[1], gen_seed, &n));
            NetlistPtr netlist{n};
            check(nb_netlist_write(netlist.get(), gen_out.c_str()));
            return kExitOk;
        }

        if (*batch) {
            NetlistPtr netlist = load_netlist(batch_in);
            ModelPtr model = batch_flags.load_model();
            const nb_config config = batch_flags.to_config();
            nb_result* r = nullptr;
            check(nb_batch(netlist.get(), model.get(), &config, &r));
            ResultPtr result{r};
            check(nb_result_write(result.get(), batch_out.c_str()));
            if (!stats_out.empty()) check(nb_result_write_stats(result.get(), stats_out.c_str(), NB_STATS_TEXT));
            if (!stats_json_out.empty()) {
                check(nb_result_write_stats(result.get(), stats_json_out.c_str(), NB_STATS_JSON));
            }
            nb_stats stats;
            check(nb_result_stats(result.get(), &stats));
            std::printf("%llu nets -> %llu batches (conflict-free after evaluation: %.4f, %.1f ms)\n",
                        static_cast<unsigned long long>(stats.n_nets),
                        static_cast<unsigned long long>(stats.final_batches), stats.conflict_free_fraction,
                        stats.total_ms);
            if (verify) {
                nb_report* rep = nullptr;
                check(nb_validate(netlist.get(), result.get(), &rep));
                ReportPtr report{rep};
                if (!nb_report_is_valid(report.get())) {
                    std::fputs(nb_report_text(report.get()), stderr);
                    return kExitInvalid;
                }
            }
            return kExitOk;
        }

        if (*validate) {
            NetlistPtr netlist = load_netlist(val_netlist);
            ResultPtr result = load_batches(val_batches);
            nb_report* rep = nullptr;
            check(nb_validate(netlist.get(), result.get(), &rep));
            ReportPtr report{rep};
            if (nb_report_is_valid(report.get())) {
                std::printf("valid: %zu batches\n", nb_result_batch_count(result.get()));
                return kExitOk;
            }
            std::fputs(nb_report_text(report.get()), stdout);
            std::printf("invalid: %zu violations\n", nb_report_violation_count(report.get()));
            return kExitInvalid;
        }

        if (*compare) {
            NetlistPtr netlist = load_netlist(cmp_in);
            ModelPtr model = cmp_flags.load_model();
            const nb_config config = cmp_flags.to_config();
            nb_comparison* c = nullptr;
            check(nb_compare(netlist.get(), model.get(), &config, &c));
            ComparisonPtr comparison{c};
            std::fputs(nb_comparison_text(comparison.get()), stdout);
            if (!cmp_out.empty()) {
                std::ofstream out(cmp_out);
                out << nb_comparison_text(comparison.get());
                if (!out) {
                    std::fprintf(stderr, "netbatch: cannot write '%s'\n", cmp_out.c_str());
                    return kExitIo;
                }
            }
            return kExitOk;
        }

        if (*export_cmd) {
            NetlistPtr netlist = load_netlist(exp_netlist);
            ResultPtr result = load_batches(exp_batches);
            size_t exported = 0;
            check(nb_export_training(netlist.get(), result.get(), min_batch, exp_nets.c_str(), exp_edges.c_str(),
                                     &exported));
            std::printf("exported %zu nets\n", exported);
            return kExitOk;
        }
    } catch (const Abort& abort) {
        return abort.code;
    }
    return kExitUsage;
}
