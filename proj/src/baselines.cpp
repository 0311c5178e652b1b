#include "netbatch/baselines.hpp"

#include "netbatch/error.hpp"

namespace netbatch {

namespace {

BatchingResult first_fit_occupancy(const Netlist& netlist, std::size_t max_batch_size) {
    BatchingResult result;
    std::vector<OccupancyMap> maps;
    for (const Net& net : netlist.nets) {
        std::size_t b = 0;
        for (; b < result.batches.size(); ++b) {
            if (result.batches[b].size() < max_batch_size && !conflict_detected(maps[b], net)) break;
        }
        if (b == result.batches.size()) {
            result.batches.emplace_back();
            maps.emplace_back(netlist.grid, Representation::Sparse);
        }
        mark_net(maps[b], net);
        result.batches[b].push_back(net.id);
    }
    return result;
}

BatchingResult first_fit_pairwise(const Netlist& netlist, OverlapStrategy strategy, std::size_t max_batch_size) {
    constexpr std::int32_t kBucket = 16;
    const GridDims& g = netlist.grid;
    const std::int32_t nbx = (g.x + kBucket - 1) / kBucket;
    const std::int32_t nby = (g.y + kBucket - 1) / kBucket;
    std::vector<std::vector<NetId>> buckets(static_cast<std::size_t>(nbx) * static_cast<std::size_t>(nby));

    const std::size_t n = netlist.size();
    std::vector<Rect> boxes(n);
    std::vector<std::size_t> batch_of(n, 0);
    std::vector<std::size_t> seen(n, kUnlimited);
    std::vector<std::size_t> blocked;

    BatchingResult result;
    for (std::size_t i = 0; i < n; ++i) {
        const Net& net = netlist.nets[i];
        boxes[i] = bounding_box(net);
        const Rect& box = boxes[i];
        const std::int32_t bx0 = box.x_lo / kBucket, bx1 = box.x_hi / kBucket;
        const std::int32_t by0 = box.y_lo / kBucket, by1 = box.y_hi / kBucket;

        for (std::int32_t bx = bx0; bx <= bx1; ++bx) {
            for (std::int32_t by = by0; by <= by1; ++by) {
                for (NetId other : buckets[static_cast<std::size_t>(bx) * nby + by]) {
                    const auto o = static_cast<std::size_t>(other);
                    if (seen[o] == i) continue;
                    seen[o] = i;
                    if (blocked[batch_of[o]] == i) continue;
                    if (!box.intersects(boxes[o])) continue;
                    if (conflicts(strategy, net, netlist.nets[o])) blocked[batch_of[o]] = i;
                }
            }
        }

        std::size_t b = 0;
        while (b < result.batches.size() &&
               (blocked[b] == i || result.batches[b].size() >= max_batch_size)) {
            ++b;
        }
        if (b == result.batches.size()) {
            result.batches.emplace_back();
            blocked.push_back(kUnlimited);
        }
        result.batches[b].push_back(net.id);
        batch_of[i] = b;
        for (std::int32_t bx = bx0; bx <= bx1; ++bx) {
            for (std::int32_t by = by0; by <= by1; ++by) {
                buckets[static_cast<std::size_t>(bx) * nby + by].push_back(net.id);
            }
        }
    }
    return result;
}

}  // namespace

BatchingResult greedy_first_fit(const Netlist& netlist, OverlapStrategy strategy, std::size_t max_batch_size) {
    if (max_batch_size == 0) fail(ErrorKind::Config, "max batch size must be positive");
    BatchingResult result = strategy == OverlapStrategy::LayerAware
                                ? first_fit_occupancy(netlist, max_batch_size)
                                : first_fit_pairwise(netlist, strategy, max_batch_size);
    result.stats.new_batches = result.batches.size();
    return result;
}

}  // namespace netbatch
