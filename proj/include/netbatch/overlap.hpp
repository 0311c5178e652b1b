#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "netbatch/netlist.hpp"

namespace netbatch {

// The three ways of deciding that two nets cannot be routed concurrently.
enum class OverlapStrategy : std::uint8_t {
    BoundingBox,    // closed 2D pin-and-segment bounding boxes intersect
    LayerAgnostic,  // aligned H/H or V/V segments, or pins touching, layers ignored
    LayerAware,     // some (x, y, layer) cell used by both nets
};

const char* to_string(OverlapStrategy strategy);

struct Rect {
    std::int32_t x_lo = 0, x_hi = -1, y_lo = 0, y_hi = -1;

    bool empty() const { return x_lo > x_hi || y_lo > y_hi; }
    bool intersects(const Rect& o) const {
        return !empty() && !o.empty() && x_lo <= o.x_hi && o.x_lo <= x_hi && y_lo <= o.y_hi &&
               o.y_lo <= y_hi;
    }
};

Rect bounding_box(const Net& net);

bool conflict_bbox(const Net& a, const Net& b);

// Horizontal segments collide with horizontal ones and vertical with vertical
// wherever they share a 2D cell, on any layer. Pins collide with anything
// covering their (x, y). Anything sharing a cell on the same layer also
// collides, so this predicate always contains the layer-aware one.
bool conflict_layer_agnostic(const Net& a, const Net& b);

// True iff a pin or segment cell of one net coincides with a pin or segment
// cell of the other on the same layer.
bool conflict_layer_aware(const Net& a, const Net& b);

bool conflicts(OverlapStrategy strategy, const Net& a, const Net& b);

struct ConflictGraph {
    std::size_t n = 0;
    std::vector<std::pair<NetId, NetId>> edges;  // i < j, sorted

    std::vector<std::size_t> degrees() const;
    std::size_t max_degree() const;
    bool operator==(const ConflictGraph&) const = default;
};

enum class GraphMethod : std::uint8_t { Auto, AllPairs, Sweep };

// All-pairs up to 10^4 nets, a bounding-box sweep beyond that.
ConflictGraph build_conflict_graph(const Netlist& netlist, OverlapStrategy strategy,
                                   GraphMethod method = GraphMethod::Auto);

// "<i> <j>" per line.
void write_edge_list(std::ostream& out, const ConflictGraph& graph);

}  // namespace netbatch
