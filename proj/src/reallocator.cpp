#include "netbatch/reallocator.hpp"

#include <algorithm>

#include "netbatch/error.hpp"
#include "netbatch/parallel.hpp"

namespace netbatch {

std::size_t consolidation_threshold(std::size_t total_nets) {
    return total_nets <= 10'000'000 ? 5 : 10;
}

std::vector<Batch> exhaustive_new_batches(std::span<const NetId> pending, const Netlist& netlist,
                                          std::size_t max_batch_size, Representation rep) {
    if (max_batch_size == 0) fail(ErrorKind::Config, "max batch size must be positive");
    std::vector<Batch> out;
    std::vector<NetId> remaining(pending.begin(), pending.end());
    std::vector<NetId> left_over;
    OccupancyMap map(netlist.grid, rep);
    while (!remaining.empty()) {
        map.reset();
        Batch batch;
        left_over.clear();
        for (NetId id : remaining) {
            const Net& net = netlist.nets[static_cast<std::size_t>(id)];
            if (batch.size() < max_batch_size && !conflict_detected(map, net)) {
                mark_net(map, net);
                batch.push_back(id);
            } else {
                left_over.push_back(id);
            }
        }
        out.push_back(std::move(batch));
        remaining.swap(left_over);
    }
    return out;
}

std::vector<Batch> consolidate(std::vector<Batch> batches, std::size_t total_nets, const Netlist& netlist,
                               std::size_t max_batch_size, std::size_t* merges) {
    const std::size_t t = consolidation_threshold(total_nets);
    struct Target {
        std::size_t index;
        OccupancyMap map;
    };
    std::vector<Target> targets;
    std::vector<bool> absorbed(batches.size(), false);
    std::size_t merged = 0;

    for (std::size_t i = 0; i < batches.size(); ++i) {
        if (batches[i].empty() || batches[i].size() > t) continue;
        bool placed = false;
        for (Target& target : targets) {
            Batch& into = batches[target.index];
            if (into.size() + batches[i].size() > max_batch_size) continue;
            const bool clash = std::any_of(batches[i].begin(), batches[i].end(), [&](NetId id) {
                return conflict_detected(target.map, netlist.nets[static_cast<std::size_t>(id)]);
            });
            if (clash) continue;
            for (NetId id : batches[i]) mark_net(target.map, netlist.nets[static_cast<std::size_t>(id)]);
            into.insert(into.end(), batches[i].begin(), batches[i].end());
            absorbed[i] = true;
            ++merged;
            placed = true;
            break;
        }
        if (!placed) {
            Target target{i, OccupancyMap(netlist.grid, Representation::Sparse)};
            for (NetId id : batches[i]) mark_net(target.map, netlist.nets[static_cast<std::size_t>(id)]);
            targets.push_back(std::move(target));
        }
    }

    std::vector<Batch> out;
    out.reserve(batches.size() - merged);
    for (std::size_t i = 0; i < batches.size(); ++i) {
        if (absorbed[i]) continue;
        std::sort(batches[i].begin(), batches[i].end());
        out.push_back(std::move(batches[i]));
    }
    if (merges) *merges = merged;
    return out;
}

BatchingResult reallocate(EvaluationResult evaluation, const Netlist& netlist, const ReallocOptions& options) {
    if (options.max_batch_size == 0) fail(ErrorKind::Config, "max batch size must be positive");
    std::vector<Batch>& committed = evaluation.accepted;
    std::vector<OccupancyMap>& maps = evaluation.occupancy;
    if (maps.size() != committed.size()) fail(ErrorKind::Validation, "occupancy does not match batches");

    BatchingResult result;
    result.stats.initial_batches = committed.size();
    result.stats.rerouted = evaluation.nets2reroute.size();

    std::vector<NetId> pending = evaluation.nets2reroute;
    std::sort(pending.begin(), pending.end());

    // First fit against committed occupancy only.
    std::vector<std::vector<NetId>> tentative(committed.size());
    std::vector<NetId> unassigned;
    for (NetId id : pending) {
        const Net& net = netlist.nets[static_cast<std::size_t>(id)];
        bool placed = false;
        for (std::size_t b = 0; b < committed.size(); ++b) {
            if (committed[b].size() + tentative[b].size() >= options.max_batch_size) continue;
            if (conflict_detected(maps[b], net)) continue;
            tentative[b].push_back(id);
            placed = true;
            break;
        }
        if (!placed) unassigned.push_back(id);
    }

    // Tentative nets may collide with each other; re-check them per batch.
    std::vector<std::vector<NetId>> returned(committed.size());
    parallel_for_dynamic(committed.size(), options.workers, [&](std::size_t b) {
        screen_nets(maps[b], tentative[b], netlist, committed[b], returned[b]);
    });
    for (std::size_t b = 0; b < committed.size(); ++b) {
        result.stats.placed_in_existing += tentative[b].size() - returned[b].size();
        result.stats.returned_by_revalidation += returned[b].size();
        unassigned.insert(unassigned.end(), returned[b].begin(), returned[b].end());
    }
    maps.clear();
    std::sort(unassigned.begin(), unassigned.end());

    std::vector<Batch> fresh = exhaustive_new_batches(unassigned, netlist, options.max_batch_size, options.rep);
    result.stats.new_batches = fresh.size();

    std::vector<Batch> all;
    all.reserve(committed.size() + fresh.size());
    for (Batch& b : committed) {
        if (!b.empty()) all.push_back(std::move(b));
    }
    for (Batch& b : fresh) all.push_back(std::move(b));

    const std::size_t cap = options.allow_consolidation_overflow ? kUnlimited : options.max_batch_size;
    result.batches = consolidate(std::move(all), netlist.size(), netlist, cap, &result.stats.consolidation_merges);
    return result;
}

BatchingResult reallocate(std::span<const NetId> nets2reroute, std::span<const Batch> accepted,
                          const Netlist& netlist, const ReallocOptions& options) {
    std::vector<Batch> all(accepted.begin(), accepted.end());
    all.emplace_back(nets2reroute.begin(), nets2reroute.end());
    check_batch_ids(all, netlist);

    EvaluationResult evaluation;
    evaluation.accepted.assign(accepted.begin(), accepted.end());
    evaluation.nets2reroute.assign(nets2reroute.begin(), nets2reroute.end());
    for (const Batch& batch : accepted) {
        OccupancyMap map(netlist.grid, options.rep);
        for (NetId id : batch) mark_net(map, netlist.nets[static_cast<std::size_t>(id)]);
        evaluation.occupancy.push_back(std::move(map));
    }
    return reallocate(std::move(evaluation), netlist, options);
}

}  // namespace netbatch
