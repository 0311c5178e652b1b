#include <doctest.h>

#include <algorithm>

#include "netbatch/error.hpp"
#include "netbatch/evaluator.hpp"
#include "netbatch/initial_batcher.hpp"
#include "netbatch/overlap.hpp"
#include "support.hpp"

using namespace netbatch;
using netbatch::testing::count_batch_conflicts;
using netbatch::testing::random_instance;

namespace {

Netlist two_point_nets() {
    Netlist n;
    n.grid = {8, 8, 2};
    n.nets.push_back(make_net(0, {{1, 1, 0}}));
    n.nets.push_back(make_net(1, {{1, 1, 0}}));
    n.nets.push_back(make_net(2, {{4, 4, 1}}));
    return n;
}

std::vector<Batch> fallback_batches(const Netlist& n, std::uint32_t b) {
    return group_by_batch(fallback_assign(n, b, 1), b);
}

}  // namespace

TEST_CASE("disjoint nets are both accepted") {
    const Netlist n = two_point_nets();
    const std::vector<Batch> batches{{0, 2}};
    const EvaluationResult r = evaluate_batches(batches, n, Representation::Dense);
    CHECK(r.accepted == std::vector<Batch>{{0, 2}});
    CHECK(r.nets2reroute.empty());
    REQUIRE(r.occupancy.size() == 1);
    CHECK(r.occupancy[0].marked_count() == 2);
}

TEST_CASE("the lower id wins a collision regardless of listed order") {
    const Netlist n = two_point_nets();
    const std::vector<Batch> batches{{1, 0}};
    const EvaluationResult r = evaluate_batches(batches, n, Representation::Sparse);
    CHECK(r.accepted == std::vector<Batch>{{0}});
    CHECK(r.nets2reroute == std::vector<NetId>{1});
}

TEST_CASE("unknown or repeated ids are rejected") {
    const Netlist n = two_point_nets();
    const std::vector<Batch> unknown{{0, 7}};
    const std::vector<Batch> repeated{{0}, {0}};
    CHECK_THROWS_AS(evaluate_batches(unknown, n, Representation::Dense), Error);
    CHECK_THROWS_AS(evaluate_batches(repeated, n, Representation::Dense), Error);
}

TEST_CASE("empty batches pass through") {
    const Netlist n = two_point_nets();
    const std::vector<Batch> batches{{}, {2}, {}};
    const EvaluationResult r = evaluate_batches(batches, n, Representation::Dense, 4);
    CHECK(r.accepted == std::vector<Batch>{{}, {2}, {}});
}

TEST_CASE("random instances: sound, partitioned, maximal, deterministic") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Netlist n = random_instance(seed, 2000, {80, 80, 6});
        const std::vector<Batch> batches = fallback_batches(n, 12);
        const EvaluationResult r = evaluate_batches(batches, n, Representation::Dense, 1);

        CHECK(count_batch_conflicts(r.accepted, n) == 0);
        std::size_t accepted = 0;
        for (const Batch& b : r.accepted) accepted += b.size();
        CHECK(accepted + r.nets2reroute.size() == n.size());
        std::vector<Batch> all = r.accepted;
        all.push_back(r.nets2reroute);
        CHECK(netbatch::testing::is_partition(all, n.size()));

        // Each rejected net collides with an accepted, lower-id net of its own batch.
        std::vector<std::size_t> owner(n.size());
        for (std::size_t b = 0; b < batches.size(); ++b)
            for (NetId id : batches[b]) owner[static_cast<std::size_t>(id)] = b;
        for (NetId id : r.nets2reroute) {
            const Batch& acc = r.accepted[owner[static_cast<std::size_t>(id)]];
            const bool blocked = std::any_of(acc.begin(), acc.end(), [&](NetId other) {
                return other < id && netbatch::testing::cells_collide(n.nets[static_cast<std::size_t>(other)],
                                                                      n.nets[static_cast<std::size_t>(id)]);
            });
            CHECK(blocked);
        }

        for (unsigned w : {2u, 8u}) {
            const EvaluationResult other = evaluate_batches(batches, n, Representation::Sparse, w);
            CHECK(other.accepted == r.accepted);
            CHECK(other.nets2reroute == r.nets2reroute);
        }
    }
}
