#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "netbatch/netlist.hpp"

namespace netbatch {

using LinearIndex = std::uint64_t;

enum class Representation : std::uint8_t { Dense, Sparse };

const char* to_string(Representation rep);

// 2^28 one-byte flags summed over all live maps.
inline constexpr std::uint64_t kDefaultDenseThreshold = std::uint64_t{1} << 28;
inline constexpr std::size_t kSparseReserve = 1000;

// layer * x_g * y_g + x * y_g + y. Throws Index when out of bounds.
LinearIndex linearize(std::int32_t x, std::int32_t y, std::int32_t layer, const GridDims& grid);

// Dense while n_maps * cells <= threshold, sparse beyond it.
Representation select_representation(std::uint64_t n_maps, const GridDims& grid,
                                     std::uint64_t threshold = kDefaultDenseThreshold);

// Boolean occupancy over the linearized grid. Single writer; allocate one per
// worker or per batch, never share across concurrent writers.
class OccupancyMap {
public:
    OccupancyMap(const GridDims& grid, Representation rep);

    OccupancyMap(OccupancyMap&&) noexcept = default;
    OccupancyMap& operator=(OccupancyMap&&) noexcept = default;
    OccupancyMap(const OccupancyMap&) = default;
    OccupancyMap& operator=(const OccupancyMap&) = default;

    void mark(LinearIndex index);
    bool is_marked(LinearIndex index) const;

    // Clears in O(marked) for both representations.
    void reset();

    std::size_t marked_count() const;
    Representation representation() const { return rep_; }
    const GridDims& grid() const { return grid_; }
    LinearIndex extent() const { return extent_; }

private:
    void check(LinearIndex index) const;

    GridDims grid_;
    Representation rep_;
    LinearIndex extent_;
    std::vector<std::uint8_t> dense_;
    std::vector<LinearIndex> touched_;
    std::unordered_set<LinearIndex> sparse_;
};

// Calls fn(linear index) for every pin cell and every cell covered by every
// segment (inclusive spans) on that segment's layer. Cells may repeat.
template <typename Fn>
void for_each_cell(const Net& net, const GridDims& grid, Fn&& fn) {
    for (const Pin& p : net.pins) fn(linearize(p.x, p.y, p.layer, grid));
    for (const Segment& s : net.segments) {
        for (std::int32_t t = s.lo; t <= s.hi; ++t) {
            if (s.orientation == Orientation::Horizontal) {
                fn(linearize(t, s.fixed, s.layer, grid));
            } else {
                fn(linearize(s.fixed, t, s.layer, grid));
            }
        }
    }
}

void mark_net(OccupancyMap& map, const Net& net);

// True iff any pin or segment cell of the net is already marked.
bool conflict_detected(const OccupancyMap& map, const Net& net);

}  // namespace netbatch
