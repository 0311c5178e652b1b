#include "netbatch/occupancy.hpp"

#include <string>

#include "netbatch/error.hpp"

namespace netbatch {

const char* to_string(Representation rep) {
    return rep == Representation::Dense ? "dense" : "sparse";
}

LinearIndex linearize(std::int32_t x, std::int32_t y, std::int32_t layer, const GridDims& grid) {
    if (!grid.contains(x, y, layer)) {
        fail(ErrorKind::Index, "cell (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                   std::to_string(layer) + ") is outside the grid");
    }
    const auto xg = static_cast<LinearIndex>(grid.x);
    const auto yg = static_cast<LinearIndex>(grid.y);
    return static_cast<LinearIndex>(layer) * xg * yg + static_cast<LinearIndex>(x) * yg +
           static_cast<LinearIndex>(y);
}

Representation select_representation(std::uint64_t n_maps, const GridDims& grid,
                                     std::uint64_t threshold) {
    const std::uint64_t cells = grid.cells();
    // n_maps * cells <= threshold, without overflowing the product.
    if (cells == 0) return Representation::Dense;
    if (n_maps > threshold / cells) return Representation::Sparse;
    return n_maps * cells <= threshold ? Representation::Dense : Representation::Sparse;
}

OccupancyMap::OccupancyMap(const GridDims& grid, Representation rep)
    : grid_(grid), rep_(rep), extent_(grid.cells()) {
    if (rep_ == Representation::Dense) {
        dense_.assign(extent_, 0);
    } else {
        sparse_.reserve(kSparseReserve);
    }
}

void OccupancyMap::check(LinearIndex index) const {
    if (index >= extent_) {
        fail(ErrorKind::Index, "linear index " + std::to_string(index) + " outside extent " +
                                   std::to_string(extent_));
    }
}

void OccupancyMap::mark(LinearIndex index) {
    check(index);
    if (rep_ == Representation::Dense) {
        if (dense_[index] == 0) {
            dense_[index] = 1;
            touched_.push_back(index);
        }
    } else {
        sparse_.insert(index);
    }
}

bool OccupancyMap::is_marked(LinearIndex index) const {
    check(index);
    if (rep_ == Representation::Dense) return dense_[index] != 0;
    return sparse_.count(index) != 0;
}

void OccupancyMap::reset() {
    if (rep_ == Representation::Dense) {
        for (LinearIndex i : touched_) dense_[i] = 0;
        touched_.clear();
    } else {
        sparse_.clear();
    }
}

std::size_t OccupancyMap::marked_count() const {
    return rep_ == Representation::Dense ? touched_.size() : sparse_.size();
}

void mark_net(OccupancyMap& map, const Net& net) {
    for_each_cell(net, map.grid(), [&](LinearIndex i) { map.mark(i); });
}

bool conflict_detected(const OccupancyMap& map, const Net& net) {
    const GridDims& g = map.grid();
    for (const Pin& p : net.pins) {
        if (map.is_marked(linearize(p.x, p.y, p.layer, g))) return true;
    }
    for (const Segment& s : net.segments) {
        for (std::int32_t t = s.lo; t <= s.hi; ++t) {
            const LinearIndex i = s.orientation == Orientation::Horizontal
                                      ? linearize(t, s.fixed, s.layer, g)
                                      : linearize(s.fixed, t, s.layer, g);
            if (map.is_marked(i)) return true;
        }
    }
    return false;
}

}  // namespace netbatch
