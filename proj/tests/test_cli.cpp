#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("netbatch_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string tmp(const std::string& name) { return (workdir() / name).string(); }

std::string data(const std::string& name) { return std::string(NETBATCH_TEST_DATA) + "/" + name; }

// Runs the CLI with `args`, returns its exit status; stdout goes to `out`.
int run(const std::string& args, std::string* out = nullptr) {
    const std::string capture = tmp("stdout.txt");
    const std::string cmd = std::string("\"") + NETBATCH_CLI + "\" " + args + " > \"" + capture + "\" 2> \"" +
                            tmp("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(capture);
        std::ostringstream s;
        s << in.rdbuf();
        *out = s.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Cleanup {
    ~Cleanup() { fs::remove_all(workdir()); }
} cleanup;

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help") == 0);
    std::string out;
    CHECK(run("batch --help", &out) == 0);
    CHECK(out.find("--max-batch-size") != std::string::npos);
    CHECK(out.find("4096") != std::string::npos);
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("gen --nets 0 -o " + tmp("x.net")) == 2);
    CHECK(run("gen --pins 5 2 -o " + tmp("x.net")) == 2);
    CHECK(run("batch -i /nonexistent.net -o " + tmp("x.bat")) == 2);
}

TEST_CASE("gen is deterministic and round-trips through batch and validate") {
    const std::string a = tmp("a.net"), b = tmp("b.net");
    REQUIRE(run("gen --grid 100 100 6 --nets 1000 --seed 1 -o " + a) == 0);
    REQUIRE(run("gen --grid 100 100 6 --nets 1000 --seed 1 -o " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("grid 100 100 6\nnet 0 ", 0) == 0);

    std::string out;
    REQUIRE(run("batch -i " + a + " -o " + tmp("a.bat") + " --stats " + tmp("a.stats") + " --stats-json " +
                    tmp("a.json") + " --verify -j 2",
                &out) == 0);
    CHECK(out.find("1000 nets -> ") != std::string::npos);
    CHECK(slurp(tmp("a.stats")).find("final_batches = ") != std::string::npos);
    CHECK(slurp(tmp("a.json")).find("\"workers\": 2") != std::string::npos);
    CHECK(run("validate -i " + a + " -b " + tmp("a.bat"), &out) == 0);
    CHECK(out.rfind("valid: ", 0) == 0);

    // Same flags, same output.
    REQUIRE(run("batch -i " + a + " -o " + tmp("a2.bat") + " -j 1") == 0);
    CHECK(slurp(tmp("a.bat")) == slurp(tmp("a2.bat")));
}

TEST_CASE("validate reports corruption") {
    const std::string net = data("four_aligned_nets.net");
    std::ofstream(tmp("dup.bat")) << "batch 0: 0 1 2\nbatch 1: 2 3\n";
    std::string out;
    CHECK(run("validate -i " + net + " -b " + tmp("dup.bat"), &out) == 1);
    CHECK(out.find("duplicated net 2") != std::string::npos);

    std::ofstream(tmp("unknown.bat")) << "batch 0: 0 1 2 3 17\n";
    CHECK(run("validate -i " + net + " -b " + tmp("unknown.bat"), &out) == 1);
    CHECK(out.find("unknown net 17") != std::string::npos);

    std::ofstream(tmp("garbled.bat")) << "batch zero: 0\n";
    CHECK(run("validate -i " + net + " -b " + tmp("garbled.bat")) == 4);
}

TEST_CASE("batch with models") {
    const std::string net = data("four_aligned_nets.net");
    CHECK(run("batch -i " + net + " -o " + tmp("m.bat") + " -m " + data("uniform4.lbgen")) == 0);
    CHECK(slurp(tmp("m.bat")) == "batch 0: 0 1 2 3\n");
    CHECK(run("batch -i " + net + " -o " + tmp("m.bat") + " -m " + data("bad_shape.lbgen")) == 4);
    std::ofstream(tmp("junk.lbgen")) << "not a model";
    CHECK(run("batch -i " + net + " -o " + tmp("m.bat") + " -m " + tmp("junk.lbgen")) == 4);
}

TEST_CASE("malformed netlist and unwritable output") {
    std::ofstream(tmp("bad.net")) << "grid 10 10 2\nnet 0 1\npin 12 0 0\n";
    CHECK(run("batch -i " + tmp("bad.net") + " -o " + tmp("bad.bat")) == 1);
    std::ofstream(tmp("syntax.net")) << "grid 10 10 2\nnet 0 1\npin 1\n";
    CHECK(run("batch -i " + tmp("syntax.net") + " -o " + tmp("bad.bat")) == 4);
    CHECK(run("batch -i " + data("four_aligned_nets.net") + " -o /nonexistent/dir/out.bat") == 3);
}

TEST_CASE("compare prints one row per strategy") {
    std::string out;
    REQUIRE(run("compare -i " + data("four_aligned_nets.net") + " -j 1 -o " + tmp("cmp.txt"), &out) == 0);
    CHECK(out.find("first-fit/bbox 4 ") != std::string::npos);
    CHECK(out.find("first-fit/layer-agnostic 2 ") != std::string::npos);
    CHECK(out.find("first-fit/layer-aware 1 ") != std::string::npos);
    CHECK(out.find("pipeline/fallback 1 ") != std::string::npos);
    CHECK(slurp(tmp("cmp.txt")) == out);
}

TEST_CASE("export-training") {
    std::ofstream(tmp("hp.net")) << "grid 10 10 2\nnet 0 2\npin 1 1 0\npin 4 3 0\nnet 1 1\npin 8 8 1\n";
    std::ofstream(tmp("hp.bat")) << "batch 0: 0 1\n";
    std::string out;
    REQUIRE(run("export-training -i " + tmp("hp.net") + " -b " + tmp("hp.bat") + " --min-batch-size 1 --nets-out " +
                    tmp("nets.txt") + " --edges-out " + tmp("edges.txt"),
                &out) == 0);
    CHECK(out == "exported 2 nets\n");
    CHECK(slurp(tmp("nets.txt")).find("net 0 2 0 5\n") != std::string::npos);
    CHECK(slurp(tmp("edges.txt")).empty());
    REQUIRE(run("export-training -i " + tmp("hp.net") + " -b " + tmp("hp.bat") + " --nets-out " + tmp("nets.txt") +
                    " --edges-out " + tmp("edges.txt"),
                &out) == 0);
    CHECK(out == "exported 0 nets\n");
}
