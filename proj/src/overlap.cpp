#include "netbatch/overlap.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace netbatch {

const char* to_string(OverlapStrategy strategy) {
    switch (strategy) {
        case OverlapStrategy::BoundingBox: return "bbox";
        case OverlapStrategy::LayerAgnostic: return "layer-agnostic";
        case OverlapStrategy::LayerAware: return "layer-aware";
    }
    return "unknown";
}

namespace {

enum class Kind : std::uint8_t { Pin, Horizontal, Vertical };

// A pin or a segment as a one-cell-wide closed rectangle on its layer.
struct Element {
    Rect rect;
    std::int32_t layer;
    Kind kind;
};

std::vector<Element> elements(const Net& net) {
    std::vector<Element> out;
    out.reserve(net.pins.size() + net.segments.size());
    for (const Pin& p : net.pins) out.push_back({{p.x, p.x, p.y, p.y}, p.layer, Kind::Pin});
    for (const Segment& s : net.segments) {
        if (s.orientation == Orientation::Horizontal) {
            out.push_back({{s.lo, s.hi, s.fixed, s.fixed}, s.layer, Kind::Horizontal});
        } else {
            out.push_back({{s.fixed, s.fixed, s.lo, s.hi}, s.layer, Kind::Vertical});
        }
    }
    return out;
}

template <typename Pred>
bool any_pair(const Net& a, const Net& b, Pred pred) {
    if (!bounding_box(a).intersects(bounding_box(b))) return false;
    const auto ea = elements(a);
    const auto eb = elements(b);
    for (const Element& x : ea) {
        for (const Element& y : eb) {
            if (x.rect.intersects(y.rect) && pred(x, y)) return true;
        }
    }
    return false;
}

}  // namespace

Rect bounding_box(const Net& net) {
    Rect r;
    bool first = true;
    auto extend = [&](std::int32_t x0, std::int32_t x1, std::int32_t y0, std::int32_t y1) {
        if (first) {
            r = {x0, x1, y0, y1};
            first = false;
            return;
        }
        r.x_lo = std::min(r.x_lo, x0);
        r.x_hi = std::max(r.x_hi, x1);
        r.y_lo = std::min(r.y_lo, y0);
        r.y_hi = std::max(r.y_hi, y1);
    };
    for (const Pin& p : net.pins) extend(p.x, p.x, p.y, p.y);
    for (const Segment& s : net.segments) {
        if (s.orientation == Orientation::Horizontal) {
            extend(s.lo, s.hi, s.fixed, s.fixed);
        } else {
            extend(s.fixed, s.fixed, s.lo, s.hi);
        }
    }
    return r;
}

bool conflict_bbox(const Net& a, const Net& b) {
    return bounding_box(a).intersects(bounding_box(b));
}

bool conflict_layer_agnostic(const Net& a, const Net& b) {
    return any_pair(a, b, [](const Element& x, const Element& y) {
        return x.layer == y.layer || x.kind == Kind::Pin || y.kind == Kind::Pin || x.kind == y.kind;
    });
}

bool conflict_layer_aware(const Net& a, const Net& b) {
    return any_pair(a, b, [](const Element& x, const Element& y) { return x.layer == y.layer; });
}

bool conflicts(OverlapStrategy strategy, const Net& a, const Net& b) {
    switch (strategy) {
        case OverlapStrategy::BoundingBox: return conflict_bbox(a, b);
        case OverlapStrategy::LayerAgnostic: return conflict_layer_agnostic(a, b);
        case OverlapStrategy::LayerAware: return conflict_layer_aware(a, b);
    }
    return true;
}

std::vector<std::size_t> ConflictGraph::degrees() const {
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [i, j] : edges) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
    }
    return deg;
}

std::size_t ConflictGraph::max_degree() const {
    const auto deg = degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

ConflictGraph build_conflict_graph(const Netlist& netlist, OverlapStrategy strategy,
                                   GraphMethod method) {
    ConflictGraph graph;
    graph.n = netlist.size();
    const auto& nets = netlist.nets;
    if (method == GraphMethod::Auto) {
        method = nets.size() > 10'000 ? GraphMethod::Sweep : GraphMethod::AllPairs;
    }

    if (method == GraphMethod::AllPairs) {
        for (std::size_t i = 0; i < nets.size(); ++i) {
            for (std::size_t j = i + 1; j < nets.size(); ++j) {
                if (conflicts(strategy, nets[i], nets[j])) {
                    graph.edges.emplace_back(static_cast<NetId>(i), static_cast<NetId>(j));
                }
            }
        }
        return graph;
    }

    // Sweep along x over bounding boxes; only overlapping boxes reach the
    // exact predicate.
    std::vector<Rect> boxes(nets.size());
    for (std::size_t i = 0; i < nets.size(); ++i) boxes[i] = bounding_box(nets[i]);
    std::vector<std::size_t> order(nets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].x_lo != boxes[b].x_lo ? boxes[a].x_lo < boxes[b].x_lo : a < b;
    });

    std::vector<std::size_t> active;
    for (std::size_t idx : order) {
        const Rect& box = boxes[idx];
        std::erase_if(active, [&](std::size_t other) { return boxes[other].x_hi < box.x_lo; });
        for (std::size_t other : active) {
            if (boxes[other].y_lo > box.y_hi || box.y_lo > boxes[other].y_hi) continue;
            if (conflicts(strategy, nets[idx], nets[other])) {
                graph.edges.emplace_back(static_cast<NetId>(std::min(idx, other)),
                                         static_cast<NetId>(std::max(idx, other)));
            }
        }
        active.push_back(idx);
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

void write_edge_list(std::ostream& out, const ConflictGraph& graph) {
    for (const auto& [i, j] : graph.edges) out << i << ' ' << j << '\n';
}

}  // namespace netbatch
