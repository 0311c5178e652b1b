#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace netbatch::testing {

std::string data_path(const std::string& name) { return std::string(NETBATCH_TEST_DATA) + "/" + name; }

Netlist four_aligned_nets() { return read_netlist_file(data_path("four_aligned_nets.net")); }

Netlist random_instance(std::uint64_t seed, std::uint32_t n_nets, GridDims grid, std::uint32_t min_pins,
                        std::uint32_t max_pins) {
    SyntheticSpec spec;
    spec.grid = grid;
    spec.n_nets = n_nets;
    spec.min_pins = min_pins;
    spec.max_pins = max_pins;
    spec.seed = seed;
    return generate_synthetic(spec);
}

namespace {

std::uint64_t pack(std::int64_t x, std::int64_t y, std::int64_t layer) {
    return (static_cast<std::uint64_t>(layer) << 42) | (static_cast<std::uint64_t>(x) << 21) |
           static_cast<std::uint64_t>(y);
}

struct Box {
    std::int32_t x0, x1, y0, y1;
};

Box box_of(const Net& net) {
    Box b{net.pins[0].x, net.pins[0].x, net.pins[0].y, net.pins[0].y};
    auto grow = [&](std::int32_t x, std::int32_t y) {
        b.x0 = std::min(b.x0, x);
        b.x1 = std::max(b.x1, x);
        b.y0 = std::min(b.y0, y);
        b.y1 = std::max(b.y1, y);
    };
    for (const Pin& p : net.pins) grow(p.x, p.y);
    for (const Segment& s : net.segments) {
        if (s.orientation == Orientation::Horizontal) {
            grow(s.lo, s.fixed);
            grow(s.hi, s.fixed);
        } else {
            grow(s.fixed, s.lo);
            grow(s.fixed, s.hi);
        }
    }
    return b;
}

bool boxes_touch(const Box& a, const Box& b) {
    return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

bool sorted_intersect(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

}  // namespace

std::vector<std::uint64_t> occupied_cells(const Net& net) {
    std::vector<std::uint64_t> cells;
    for (const Pin& p : net.pins) cells.push_back(pack(p.x, p.y, p.layer));
    for (const Segment& s : net.segments) {
        for (std::int32_t t = s.lo; t <= s.hi; ++t) {
            cells.push_back(s.orientation == Orientation::Horizontal ? pack(t, s.fixed, s.layer)
                                                                     : pack(s.fixed, t, s.layer));
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

bool cells_collide(const Net& a, const Net& b) { return sorted_intersect(occupied_cells(a), occupied_cells(b)); }

std::size_t count_batch_conflicts(const std::vector<Batch>& batches, const Netlist& netlist) {
    std::vector<std::vector<std::uint64_t>> cells(netlist.size());
    std::vector<Box> boxes(netlist.size());
    for (std::size_t i = 0; i < netlist.size(); ++i) {
        cells[i] = occupied_cells(netlist.nets[i]);
        boxes[i] = box_of(netlist.nets[i]);
    }
    std::size_t conflicts = 0;
    for (const Batch& batch : batches) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            for (std::size_t j = i + 1; j < batch.size(); ++j) {
                const auto a = static_cast<std::size_t>(batch[i]);
                const auto b = static_cast<std::size_t>(batch[j]);
                if (boxes_touch(boxes[a], boxes[b]) && sorted_intersect(cells[a], cells[b])) ++conflicts;
            }
        }
    }
    return conflicts;
}

bool is_partition(const std::vector<Batch>& batches, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const Batch& batch : batches) {
        for (NetId id : batch) {
            if (id < 0 || static_cast<std::size_t>(id) >= n) return false;
            if (seen[static_cast<std::size_t>(id)]++ != 0) return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

std::int64_t brute_force_rmst_length(const std::vector<Pin>& pins) {
    const std::size_t k = pins.size();
    if (k < 2) return 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(i, j);
    }
    auto dist = [&](std::size_t i, std::size_t j) {
        return static_cast<std::int64_t>(std::abs(pins[i].x - pins[j].x) + std::abs(pins[i].y - pins[j].y));
    };
    std::int64_t best = -1;
    const std::size_t m = edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k - 1) continue;
        std::vector<std::size_t> parent(k);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::int64_t length = 0;
        bool tree = true;
        for (std::size_t e = 0; e < m && tree; ++e) {
            if (!(mask & (1u << e))) continue;
            const std::size_t a = find(edges[e].first);
            const std::size_t b = find(edges[e].second);
            if (a == b) tree = false;
            parent[a] = b;
            length += dist(edges[e].first, edges[e].second);
        }
        if (tree && (best < 0 || length < best)) best = length;
    }
    return best;
}

bool segments_connect_pins(const Net& net) {
    // Nodes: pins then segments, each as a closed rectangle in 2D.
    std::vector<Box> nodes;
    for (const Pin& p : net.pins) nodes.push_back({p.x, p.x, p.y, p.y});
    for (const Segment& s : net.segments) {
        if (s.orientation == Orientation::Horizontal) {
            nodes.push_back({s.lo, s.hi, s.fixed, s.fixed});
        } else {
            nodes.push_back({s.fixed, s.fixed, s.lo, s.hi});
        }
    }
    std::vector<bool> reached(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (!reached[v] && boxes_touch(nodes[u], nodes[v])) {
                reached[v] = true;
                stack.push_back(v);
            }
        }
    }
    return std::all_of(reached.begin(), reached.begin() + static_cast<std::ptrdiff_t>(net.pins.size()),
                       [](bool r) { return r; });
}

}  // namespace netbatch::testing
