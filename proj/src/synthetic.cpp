#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "netbatch/error.hpp"
#include "netbatch/netlist.hpp"

namespace netbatch {

namespace {

using Rng = std::mt19937_64;

std::int32_t uniform(Rng& rng, std::int32_t lo, std::int32_t hi) {
    return std::uniform_int_distribution<std::int32_t>(lo, hi)(rng);
}

}  // namespace

Netlist generate_synthetic(const SyntheticSpec& spec) {
    validate_grid(spec.grid);
    if (spec.n_nets < 1) fail(ErrorKind::Config, "at least one net is required");
    if (spec.min_pins < 1 || spec.min_pins > spec.max_pins) {
        fail(ErrorKind::Config, "pin range must satisfy 1 <= min <= max");
    }
    const GridDims& g = spec.grid;
    if (spec.max_pins > g.cells()) {
        fail(ErrorKind::Generation, "grid has " + std::to_string(g.cells()) +
                                        " cells, too few for " + std::to_string(spec.max_pins) +
                                        " distinct pins");
    }

    Rng rng(spec.seed);
    // Typical net extent scales with the smaller grid side.
    const std::int32_t max_radius = std::max(1, std::min(g.x, g.y) / 25);

    Netlist netlist;
    netlist.grid = g;
    netlist.nets.reserve(spec.n_nets);
    for (std::uint32_t id = 0; id < spec.n_nets; ++id) {
        const auto k = static_cast<std::uint32_t>(
            uniform(rng, static_cast<std::int32_t>(spec.min_pins), static_cast<std::int32_t>(spec.max_pins)));
        const std::int32_t cx = uniform(rng, 0, g.x - 1);
        const std::int32_t cy = uniform(rng, 0, g.y - 1);
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        auto radius = static_cast<std::int32_t>(1 + static_cast<double>(max_radius) * u * u);

        std::int32_t x0 = 0, x1 = 0, y0 = 0, y1 = 0;
        for (;;) {
            x0 = std::max(0, cx - radius);
            x1 = std::min(g.x - 1, cx + radius);
            y0 = std::max(0, cy - radius);
            y1 = std::min(g.y - 1, cy + radius);
            const auto window = static_cast<std::uint64_t>(x1 - x0 + 1) *
                                static_cast<std::uint64_t>(y1 - y0 + 1) *
                                static_cast<std::uint64_t>(g.layers);
            if (window >= std::min<std::uint64_t>(2ULL * k, g.cells())) break;
            ++radius;
        }

        std::set<std::tuple<std::int32_t, std::int32_t, std::int32_t>> used;
        std::vector<Pin> pins;
        pins.reserve(k);
        while (pins.size() < k) {
            Pin p{uniform(rng, x0, x1), uniform(rng, y0, y1), uniform(rng, 0, g.layers - 1)};
            if (used.emplace(p.x, p.y, p.layer).second) pins.push_back(p);
        }
        Net net = make_net(static_cast<NetId>(id), std::move(pins));
        net.segments = build_rsmt(net, g);
        netlist.nets.push_back(std::move(net));
    }
    return netlist;
}

}  // namespace netbatch
