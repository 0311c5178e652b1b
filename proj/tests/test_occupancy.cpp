#include <doctest.h>

#include <random>
#include <set>

#include "netbatch/error.hpp"
#include "netbatch/occupancy.hpp"
#include "support.hpp"

using namespace netbatch;

TEST_CASE("linearize") {
    CHECK(linearize(0, 0, 0, {7, 9, 3}) == 0);
    CHECK(linearize(3, 4, 2, {10, 20, 3}) == 464);
    std::set<LinearIndex> seen;
    const GridDims g{4, 5, 3};
    for (int l = 0; l < 3; ++l)
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 5; ++y) seen.insert(linearize(x, y, l, g));
    CHECK(seen.size() == 60);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 59);
    CHECK_THROWS_AS(linearize(4, 0, 0, g), Error);
    CHECK_THROWS_AS(linearize(0, -1, 0, g), Error);
    CHECK_THROWS_AS(linearize(0, 0, 3, g), Error);
}

TEST_CASE("select_representation") {
    CHECK(select_representation(8, {100, 100, 6}, kDefaultDenseThreshold) == Representation::Dense);
    CHECK(select_representation(64, {9245, 12544, 10}, kDefaultDenseThreshold) == Representation::Sparse);
    CHECK(select_representation(2, {10, 10, 2}, 400) == Representation::Dense);
    CHECK(select_representation(2, {10, 10, 2}, 399) == Representation::Sparse);
    // Product far beyond 64 bits must not wrap around to Dense.
    CHECK(select_representation(std::uint64_t{1} << 40, {1 << 30, 1 << 30, 4}, kDefaultDenseThreshold) ==
          Representation::Sparse);
}

TEST_CASE("mark and query in both representations") {
    const GridDims g{10, 20, 3};
    for (Representation rep : {Representation::Dense, Representation::Sparse}) {
        CAPTURE(to_string(rep));
        OccupancyMap map(g, rep);
        CHECK(map.representation() == rep);
        CHECK(map.extent() == 600);
        CHECK_FALSE(map.is_marked(464));
        map.mark(464);
        CHECK(map.is_marked(464));
        map.mark(464);
        CHECK(map.marked_count() == 1);
        CHECK_THROWS_AS(map.mark(600), Error);
        CHECK_THROWS_AS((void)map.is_marked(600), Error);
        map.reset();
        CHECK_FALSE(map.is_marked(464));
        CHECK(map.marked_count() == 0);
    }
}

TEST_CASE("dense and sparse agree on random histories") {
    const GridDims g{37, 23, 5};
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<LinearIndex> cell(0, g.cells() - 1);
    OccupancyMap dense(g, Representation::Dense);
    OccupancyMap sparse(g, Representation::Sparse);
    for (int i = 0; i < 10000; ++i) {
        const LinearIndex c = cell(rng);
        dense.mark(c);
        sparse.mark(c);
    }
    int mismatches = 0;
    for (int i = 0; i < 100000; ++i) {
        const LinearIndex c = cell(rng);
        if (dense.is_marked(c) != sparse.is_marked(c)) ++mismatches;
    }
    CHECK(mismatches == 0);
    CHECK(dense.marked_count() == sparse.marked_count());
}

TEST_CASE("mark_net") {
    const GridDims g{10, 10, 2};
    for (Representation rep : {Representation::Dense, Representation::Sparse}) {
        CAPTURE(to_string(rep));
        {
            OccupancyMap map(g, rep);
            mark_net(map, make_net(0, {{3, 3, 1}}));
            CHECK(map.marked_count() == 1);
        }
        {  // endpoints coincide with span cells
            OccupancyMap map(g, rep);
            mark_net(map, make_net(0, {{1, 1, 0}, {4, 1, 0}}, {{Orientation::Horizontal, 0, 1, 1, 4}}));
            CHECK(map.marked_count() == 4);
            for (int x = 1; x <= 4; ++x) CHECK(map.is_marked(linearize(x, 1, 0, g)));
        }
        {  // pins and segment on different layers
            OccupancyMap map(g, rep);
            const Net net = make_net(0, {{1, 1, 1}, {4, 1, 1}}, {{Orientation::Horizontal, 0, 1, 1, 4}});
            mark_net(map, net);
            CHECK(map.marked_count() == 6);
            int on0 = 0, on1 = 0;
            for (LinearIndex i = 0; i < map.extent(); ++i) {
                if (!map.is_marked(i)) continue;
                (i < 100 ? on0 : on1)++;
            }
            CHECK(on0 == 4);
            CHECK(on1 == 2);
        }
        {  // idempotent
            const Net net = netbatch::testing::random_instance(2, 1, g, 5, 5).nets[0];
            OccupancyMap map(g, rep);
            mark_net(map, net);
            const std::size_t once = map.marked_count();
            mark_net(map, net);
            CHECK(map.marked_count() == once);
            CHECK(once == netbatch::testing::occupied_cells(net).size());
        }
    }
}

TEST_CASE("conflict_detected") {
    const GridDims g{10, 10, 4};
    const Net a = make_net(0, {{1, 1, 0}, {5, 1, 0}}, {{Orientation::Horizontal, 0, 1, 1, 5}});
    const Net touching = make_net(1, {{5, 0, 0}, {5, 3, 0}}, {{Orientation::Vertical, 0, 5, 0, 3}});
    const Net other_layer = make_net(2, {{1, 1, 2}, {5, 1, 2}}, {{Orientation::Horizontal, 2, 1, 1, 5}});
    for (Representation rep : {Representation::Dense, Representation::Sparse}) {
        OccupancyMap map(g, rep);
        CHECK_FALSE(conflict_detected(map, a));
        mark_net(map, a);
        CHECK(conflict_detected(map, touching));
        CHECK_FALSE(conflict_detected(map, other_layer));
    }
}
