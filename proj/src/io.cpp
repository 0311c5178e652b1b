#include "netbatch/io.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netbatch/error.hpp"

namespace netbatch {

void write_batches(std::ostream& out, const std::vector<Batch>& batches) {
    for (std::size_t b = 0; b < batches.size(); ++b) {
        out << "batch " << b << ':';
        for (NetId id : batches[b]) out << ' ' << id;
        out << '\n';
    }
}

std::vector<Batch> parse_batches(std::istream& in) {
    std::vector<Batch> batches;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto colon = raw.find(':');
        std::istringstream head(raw.substr(0, colon));
        std::string keyword;
        if (!(head >> keyword)) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        long long index = -1;
        if (keyword != "batch" || colon == std::string::npos || !(head >> index)) {
            fail(ErrorKind::Parse, where + "expected 'batch <index>: <ids>'");
        }
        if (index != static_cast<long long>(batches.size())) {
            fail(ErrorKind::Parse, where + "batch index " + std::to_string(index) + " out of sequence");
        }
        Batch batch;
        std::istringstream ids(raw.substr(colon + 1));
        std::string token;
        while (ids >> token) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || v < INT32_MIN || v > INT32_MAX) {
                fail(ErrorKind::Parse, where + "bad net id '" + token + "'");
            }
            batch.push_back(static_cast<NetId>(v));
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

void write_batches_file(const std::string& path, const std::vector<Batch>& batches) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write batches '" + path + "'");
    write_batches(out, batches);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

std::vector<Batch> read_batches_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open batches '" + path + "'");
    return parse_batches(in);
}

namespace {

nlohmann::ordered_json stats_json(const PipelineStats& s) {
    nlohmann::ordered_json j;
    j["n_nets"] = s.n_nets;
    j["n_initial_batches"] = s.n_initial_batches;
    j["initial_assignment"] = s.used_model ? "model" : "fallback";
    j["conflict_free_fraction"] = s.conflict_free_fraction;
    j["rerouted"] = s.rerouted;
    j["placed_in_existing"] = s.placed_in_existing;
    j["returned_by_revalidation"] = s.returned_by_revalidation;
    j["new_batches"] = s.new_batches;
    j["consolidation_merges"] = s.consolidation_merges;
    j["final_batches"] = s.final_batches;
    j["largest_batch"] = s.max_batch_size;
    j["assign_ms"] = s.assign_ms;
    j["evaluate_ms"] = s.evaluate_ms;
    j["reallocate_ms"] = s.reallocate_ms;
    j["total_ms"] = s.total_ms;
    j["representation"] = to_string(s.representation);
    j["workers"] = s.workers;
    return j;
}

}  // namespace

std::string stats_to_text(const PipelineStats& stats) {
    std::ostringstream out;
    const auto json = stats_json(stats);
    for (const auto& [key, value] : json.items()) {
        out << key << " = ";
        if (value.is_string()) {
            out << value.get<std::string>();
        } else {
            out << value.dump();
        }
        out << '\n';
    }
    return out.str();
}

std::string stats_to_json(const PipelineStats& stats) { return stats_json(stats).dump(2) + "\n"; }

TrainingExport export_training(const Netlist& netlist, const std::vector<Batch>& batches,
                               std::size_t min_batch_size, std::ostream& nets_out, std::ostream& edges_out) {
    check_batch_ids(batches, netlist);
    TrainingExport summary;
    Netlist kept;
    kept.grid = netlist.grid;
    std::vector<NetId> original;

    const GridDims& g = netlist.grid;
    nets_out << "grid " << g.x << ' ' << g.y << ' ' << g.layers << '\n';
    for (const Batch& batch : batches) {
        if (batch.size() < min_batch_size) continue;
        const std::size_t label = summary.batches++;
        for (NetId id : batch) {
            const Net& net = netlist.nets[static_cast<std::size_t>(id)];
            nets_out << "net " << net.id << ' ' << net.pins.size() << ' ' << label << ' ' << hpwl(net) << '\n';
            for (const Pin& p : net.pins) nets_out << "pin " << p.x << ' ' << p.y << ' ' << p.layer << '\n';
            for (const Segment& s : net.segments) {
                nets_out << (s.orientation == Orientation::Horizontal ? "hseg " : "vseg ") << s.layer << ' '
                         << s.fixed << ' ' << s.lo << ' ' << s.hi << '\n';
            }
            Net copy = net;
            copy.id = static_cast<NetId>(kept.nets.size());
            kept.nets.push_back(std::move(copy));
            original.push_back(id);
        }
    }
    summary.nets = kept.nets.size();

    const ConflictGraph graph = build_conflict_graph(kept, OverlapStrategy::LayerAware);
    std::vector<std::pair<NetId, NetId>> edges;
    edges.reserve(graph.edges.size());
    for (const auto& [i, j] : graph.edges) {
        const NetId a = original[static_cast<std::size_t>(i)];
        const NetId b = original[static_cast<std::size_t>(j)];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) edges_out << a << ' ' << b << '\n';
    summary.edges = edges.size();
    return summary;
}

TrainingExport export_training_files(const Netlist& netlist, const std::vector<Batch>& batches,
                                     std::size_t min_batch_size, const std::string& nets_path,
                                     const std::string& edges_path) {
    std::ofstream nets_out(nets_path);
    if (!nets_out) fail(ErrorKind::Io, "cannot write '" + nets_path + "'");
    std::ofstream edges_out(edges_path);
    if (!edges_out) fail(ErrorKind::Io, "cannot write '" + edges_path + "'");
    const TrainingExport summary = export_training(netlist, batches, min_batch_size, nets_out, edges_out);
    if (!nets_out || !edges_out) fail(ErrorKind::Io, "training export write failed");
    return summary;
}

}  // namespace netbatch
