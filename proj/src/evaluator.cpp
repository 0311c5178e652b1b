#include "netbatch/evaluator.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "netbatch/error.hpp"
#include "netbatch/parallel.hpp"

namespace netbatch {

void screen_nets(OccupancyMap& map, std::span<const NetId> candidates, const Netlist& netlist,
                 std::vector<NetId>& accepted, std::vector<NetId>& rejected) {
    for (NetId id : candidates) {
        const Net& net = netlist.nets[static_cast<std::size_t>(id)];
        if (conflict_detected(map, net)) {
            rejected.push_back(id);
        } else {
            mark_net(map, net);
            accepted.push_back(id);
        }
    }
}

void check_batch_ids(std::span<const Batch> batches, const Netlist& netlist) {
    std::vector<std::uint8_t> seen(netlist.size(), 0);
    for (std::size_t b = 0; b < batches.size(); ++b) {
        for (NetId id : batches[b]) {
            if (id < 0 || static_cast<std::size_t>(id) >= netlist.size()) {
                fail(ErrorKind::Validation,
                     "batch " + std::to_string(b) + " refers to unknown net " + std::to_string(id));
            }
            if (seen[static_cast<std::size_t>(id)]++ != 0) {
                fail(ErrorKind::Validation, "net " + std::to_string(id) + " appears in more than one batch slot");
            }
        }
    }
}

EvaluationResult evaluate_batches(std::span<const Batch> batches, const Netlist& netlist,
                                  Representation rep, unsigned workers) {
    check_batch_ids(batches, netlist);

    struct Local {
        std::vector<NetId> accepted;
        std::vector<NetId> rejected;
        std::optional<OccupancyMap> map;
    };
    std::vector<Local> locals(batches.size());

    parallel_for_dynamic(batches.size(), workers, [&](std::size_t b) {
        Local& local = locals[b];
        Batch order = batches[b];
        std::sort(order.begin(), order.end());
        local.map.emplace(netlist.grid, rep);
        local.accepted.reserve(order.size());
        screen_nets(*local.map, order, netlist, local.accepted, local.rejected);
    });

    EvaluationResult result;
    result.accepted.reserve(batches.size());
    result.occupancy.reserve(batches.size());
    for (Local& local : locals) {
        result.accepted.push_back(std::move(local.accepted));
        result.nets2reroute.insert(result.nets2reroute.end(), local.rejected.begin(), local.rejected.end());
        result.occupancy.push_back(std::move(*local.map));
    }
    return result;
}

}  // namespace netbatch
