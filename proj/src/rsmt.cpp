#include <algorithm>
#include <cstdlib>
#include <limits>

#include "netbatch/netlist.hpp"

namespace netbatch {

namespace {

std::int32_t segment_layer(Orientation orientation, const Pin& a, const Pin& b) {
    const bool a_matches = preferred_direction(a.layer) == orientation;
    const bool b_matches = preferred_direction(b.layer) == orientation;
    if (a_matches && b_matches) return std::min(a.layer, b.layer);
    if (a_matches) return a.layer;
    if (b_matches) return b.layer;
    return std::min(a.layer, b.layer);
}

std::int64_t l1(const Pin& a, const Pin& b) {
    return std::abs(static_cast<std::int64_t>(a.x) - b.x) + std::abs(static_cast<std::int64_t>(a.y) - b.y);
}

}  // namespace

std::vector<Segment> build_rsmt(const Net& net, const GridDims& /*grid*/) {
    const std::size_t k = net.pins.size();
    std::vector<Segment> segments;
    if (k < 2) return segments;

    // Prim over the complete L1 graph; ties go to the lowest pin index.
    constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
    std::vector<bool> in_tree(k, false);
    std::vector<std::int64_t> best(k, kInf);
    std::vector<std::size_t> parent(k, 0);
    best[0] = 0;

    for (std::size_t step = 0; step < k; ++step) {
        std::size_t u = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (!in_tree[i] && (u == k || best[i] < best[u])) u = i;
        }
        in_tree[u] = true;
        if (step > 0) {
            const Pin& from = net.pins[parent[u]];
            const Pin& to = net.pins[u];
            if (from.x != to.x) {
                segments.push_back({Orientation::Horizontal,
                                    segment_layer(Orientation::Horizontal, from, to), from.y,
                                    std::min(from.x, to.x), std::max(from.x, to.x)});
            }
            if (from.y != to.y) {
                segments.push_back({Orientation::Vertical,
                                    segment_layer(Orientation::Vertical, from, to), to.x,
                                    std::min(from.y, to.y), std::max(from.y, to.y)});
            }
        }
        for (std::size_t v = 0; v < k; ++v) {
            if (in_tree[v]) continue;
            const std::int64_t d = l1(net.pins[u], net.pins[v]);
            if (d < best[v]) {
                best[v] = d;
                parent[v] = u;
            }
        }
    }
    return segments;
}

}  // namespace netbatch
