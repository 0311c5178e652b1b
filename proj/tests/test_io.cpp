#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "netbatch/error.hpp"
#include "netbatch/io.hpp"
#include "support.hpp"

using namespace netbatch;

namespace {

std::vector<Batch> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_batches(in);
}

}  // namespace

TEST_CASE("batch file round trip") {
    const std::vector<Batch> batches{{0, 4, 7}, {}, {1, 2}};
    std::ostringstream out;
    write_batches(out, batches);
    CHECK(out.str() == "batch 0: 0 4 7\nbatch 1:\nbatch 2: 1 2\n");
    CHECK(parse(out.str()) == batches);
    CHECK(parse("# comment\n\nbatch 0: 3 1   # tail\n") == std::vector<Batch>{{3, 1}});
}

TEST_CASE("malformed batch files") {
    CHECK_THROWS_AS(parse("batch 1: 0\n"), Error);
    CHECK_THROWS_AS(parse("batch 0 0 1\n"), Error);
    CHECK_THROWS_AS(parse("group 0: 1\n"), Error);
    CHECK_THROWS_AS(parse("batch 0: 1 x\n"), Error);
    CHECK_THROWS_AS(parse("batch 0: 99999999999\n"), Error);
    try {
        parse("batch 0: 1\nbatch 0: 2\n");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(read_batches_file("/nonexistent/batches.txt"), Error);
}

TEST_CASE("stats documents use stable keys") {
    PipelineStats s;
    s.n_nets = 10;
    s.n_initial_batches = 3;
    s.rerouted = 2;
    s.conflict_free_fraction = 0.8;
    s.final_batches = 4;
    s.max_batch_size = 5;
    s.representation = Representation::Sparse;
    s.workers = 2;
    const std::string text = stats_to_text(s);
    const char* keys[] = {"n_nets", "n_initial_batches", "initial_assignment", "conflict_free_fraction",
                          "rerouted", "placed_in_existing", "returned_by_revalidation", "new_batches",
                          "consolidation_merges", "final_batches", "largest_batch", "assign_ms",
                          "evaluate_ms", "reallocate_ms", "total_ms", "representation", "workers"};
    std::istringstream lines(text);
    std::string line;
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        REQUIRE(i < std::size(keys));
        CHECK(line.rfind(std::string(keys[i]) + " = ", 0) == 0);
        ++i;
    }
    CHECK(i == std::size(keys));
    CHECK(text.find("representation = sparse\n") != std::string::npos);
    CHECK(text.find("initial_assignment = fallback\n") != std::string::npos);

    const auto j = nlohmann::json::parse(stats_to_json(s));
    CHECK(j.size() == std::size(keys));
    CHECK(j["n_nets"] == 10);
    CHECK(j["largest_batch"] == 5);
    CHECK(j["conflict_free_fraction"].get<double>() == doctest::Approx(0.8));
    CHECK(j["representation"] == "sparse");
}

TEST_CASE("training export") {
    Netlist n;
    n.grid = {300, 4, 2};
    // Net 0 is the 2-pin L shape; nets 1..249 are single pins along row 0.
    n.nets.push_back(make_net(0, {{1, 1, 0}, {4, 3, 0}}));
    n.nets[0].segments = build_rsmt(n.nets[0], n.grid);
    for (int i = 1; i < 250; ++i) n.nets.push_back(make_net(i, {{i + 5, 0, 0}}));
    std::vector<Batch> batches(2);
    for (NetId i = 0; i < 200; ++i) batches[0].push_back(i);
    for (NetId i = 200; i < 250; ++i) batches[1].push_back(i);

    SUBCASE("default threshold keeps the 200-net batch only") {
        std::ostringstream nets, edges;
        const TrainingExport t = export_training(n, batches, kDefaultExportMinBatch, nets, edges);
        CHECK(t.batches == 1);
        CHECK(t.nets == 200);
        CHECK(nets.str().rfind("grid 300 4 2\nnet 0 2 0 5\npin 1 1 0\npin 4 3 0\nhseg 0 1 1 4\nvseg 0 4 1 3\n", 0) == 0);
        CHECK(nets.str().find("net 200 ") == std::string::npos);
    }
    SUBCASE("min size one exports everything") {
        std::ostringstream nets, edges;
        const TrainingExport t = export_training(n, batches, 1, nets, edges);
        CHECK(t.batches == 2);
        CHECK(t.nets == 250);
        CHECK(nets.str().find("net 249 1 1 0\n") != std::string::npos);
    }
    SUBCASE("edges use original ids") {
        Netlist m;
        m.grid = {8, 8, 1};
        m.nets.push_back(make_net(0, {{0, 0, 0}}));
        m.nets.push_back(make_net(1, {{2, 2, 0}}));
        m.nets.push_back(make_net(2, {{5, 5, 0}}));
        m.nets.push_back(make_net(3, {{2, 2, 0}}));
        std::ostringstream nets, edges;
        const TrainingExport t = export_training(m, {{0}, {1, 2, 3}}, 3, nets, edges);
        CHECK(t.nets == 3);
        CHECK(t.edges == 1);
        CHECK(edges.str() == "1 3\n");
    }
}
