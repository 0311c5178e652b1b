#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace netbatch {

using NetId = std::int32_t;

// Routing grid extent: G-cells along x and y, and metal layer count.
struct GridDims {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int32_t layers = 0;

    std::uint64_t cells() const {
        return static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(y) *
               static_cast<std::uint64_t>(layers);
    }
    bool contains(std::int32_t px, std::int32_t py, std::int32_t layer) const {
        return px >= 0 && px < x && py >= 0 && py < y && layer >= 0 && layer < layers;
    }
    bool operator==(const GridDims&) const = default;
};

struct Pin {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int32_t layer = 0;
    bool operator==(const Pin&) const = default;
};

enum class Orientation : std::uint8_t { Horizontal, Vertical };

// Even layers prefer horizontal wiring, odd layers vertical.
inline Orientation preferred_direction(std::int32_t layer) {
    return (layer % 2 == 0) ? Orientation::Horizontal : Orientation::Vertical;
}

// Axis-aligned wire on one layer. A horizontal segment sits at y == fixed and
// covers x in [lo, hi]; a vertical one sits at x == fixed and covers y in [lo, hi].
struct Segment {
    Orientation orientation = Orientation::Horizontal;
    std::int32_t layer = 0;
    std::int32_t fixed = 0;
    std::int32_t lo = 0;
    std::int32_t hi = 0;

    std::int32_t length() const { return hi - lo; }
    bool operator==(const Segment&) const = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point2&) const = default;
};

struct Net {
    NetId id = 0;
    std::vector<Pin> pins;
    std::vector<Segment> segments;
    Point2 center;  // mean pin (x, y)

    bool operator==(const Net&) const = default;
};

struct Netlist {
    GridDims grid;
    std::vector<Net> nets;

    std::size_t size() const { return nets.size(); }
    bool operator==(const Netlist&) const = default;
};

Point2 pin_center(const std::vector<Pin>& pins);

// Half-perimeter of the pin bounding box.
std::int64_t hpwl(const Net& net);

// Builds a net, filling in its center; segments are taken as given.
Net make_net(NetId id, std::vector<Pin> pins, std::vector<Segment> segments = {});

// Throws Validation if any grid, pin or segment invariant is broken.
void validate_grid(const GridDims& grid);
void validate_net(const Net& net, const GridDims& grid);
void validate_netlist(const Netlist& netlist);

// Approximate RSMT: rectilinear MST over pin projections (Prim, L1), each
// tree edge split into a horizontal leg at the parent's y followed by a
// vertical leg at the child's x. Single-pin nets yield no segments.
std::vector<Segment> build_rsmt(const Net& net, const GridDims& grid);

// Text netlist format:
//   grid <x> <y> <layers>
//   net <id> <n_pins>
//   pin <x> <y> <layer>            (n_pins times)
//   hseg <layer> <y> <x1> <x2>     (optional)
//   vseg <layer> <x> <y1> <y2>     (optional)
// '#' starts a comment. Nets without explicit segments get build_rsmt.
Netlist parse_netlist(std::istream& in);
Netlist parse_netlist_text(const std::string& text);
Netlist read_netlist_file(const std::string& path);

void write_netlist(std::ostream& out, const Netlist& netlist);
std::string netlist_to_text(const Netlist& netlist);
void write_netlist_file(const std::string& path, const Netlist& netlist);

struct SyntheticSpec {
    GridDims grid;
    std::uint32_t n_nets = 1;
    std::uint32_t min_pins = 2;
    std::uint32_t max_pins = 8;
    std::uint64_t seed = 0;
};

// Local nets with distinct pin cells, placed around uniform random centers.
// Pure function of its argument.
Netlist generate_synthetic(const SyntheticSpec& spec);

}  // namespace netbatch
