#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pcs/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "pcs");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return pcs::run(static_cast<int>(argv.size()), argv.data());
}

std::string corpus(const std::string& name) { return std::string(PCS_CORPUS_DIR) + "/" + name; }

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("pcs_cli_test_" + name); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes")
{
    CHECK(run_cli({"fig2", "--p", "2"}) == 0);
    CHECK(run_cli({"equiv", corpus("fig2_p1.json"), corpus("fig2_p2.json")}) == 1);
    CHECK(run_cli({"equiv", corpus("cusp.json"), corpus("cusp.json")}) == 0);
    CHECK(run_cli({"series", corpus("missing.json")}) == 2);
    CHECK(run_cli({"series"}) == 2);
    CHECK(run_cli({"gen", "--mode", "both", "--seed", "1", "--max-vertices", "5", "--r", "1"}) == 2);
    CHECK(run_cli({"oracle-check", corpus("cusp.json"), "--bound", "10"}) == 0);
    CHECK(run_cli({"oracle-check", corpus("node.json"), "--bound", "1"}) == 2);
    CHECK(run_cli({"roundtrip", "--mode", "curve", "--trials", "10", "--seed", "3", "--r", "3"}) == 0);
}

TEST_CASE("series and reconstruct round trip through files")
{
    const fs::path series = scratch("cusp.ser");
    const fs::path graph = scratch("cusp.json");
    REQUIRE(run_cli({"series", corpus("cusp_pair.json"), "-o", series.string()}) == 0);
    REQUIRE(run_cli({"reconstruct", series.string(), "--mode", "div", "-o", graph.string()}) == 0);
    CHECK(run_cli({"equiv", graph.string(), corpus("cusp_pair.json")}) == 0);

    const fs::path expanded = scratch("cusp_expanded.ser");
    REQUIRE(run_cli({"series", corpus("cusp.json"), "--expand", "--bound", "20", "-o", expanded.string()}) == 0);
    CHECK(run_cli({"reconstruct", expanded.string(), "--mode", "curve", "-o", graph.string()}) == 0);
    CHECK(run_cli({"equiv", graph.string(), corpus("cusp.json")}) == 0);
    CHECK(run_cli({"reconstruct", expanded.string(), "--mode", "curve", "--bound", "4"}) == 2);
}

TEST_CASE("malformed fixtures are input errors")
{
    const fs::path bad = scratch("bad.ser");
    std::ofstream(bad) << "vars 1 mode factored bound 3\n1 1\n";
    CHECK(run_cli({"reconstruct", bad.string(), "--mode", "div"}) == 2);
    std::ofstream(bad) << "vars 2 mode factored bound 5\n-1 1 2\n";
    CHECK(run_cli({"reconstruct", bad.string(), "--mode", "curve"}) == 2);
    const fs::path graph = scratch("bad.json");
    std::ofstream(graph) << R"({"vertices":[{"id":1,"parents":[3]}]})";
    CHECK(run_cli({"series", graph.string()}) == 2);
}

TEST_CASE("generation is deterministic")
{
    const fs::path a = scratch("gen_a.json");
    const fs::path b = scratch("gen_b.json");
    REQUIRE(run_cli({"gen", "--mode", "curve", "--seed", "9", "--max-vertices", "12", "--r", "3", "-o", a.string()}) == 0);
    REQUIRE(run_cli({"gen", "--mode", "curve", "--seed", "9", "--max-vertices", "12", "--r", "3", "-o", b.string()}) == 0);
    CHECK(run_cli({"equiv", a.string(), b.string()}) == 0);
    CHECK(fs::file_size(a) == fs::file_size(b));
}

}
