#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcs/graph_io.hpp"
#include "pcs/poincare.hpp"
#include "pcs/reconstruct.hpp"
#include "pcs/series_io.hpp"

using namespace pcs;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> corpus_graphs()
{
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(PCS_CORPUS_DIR)) {
        if (entry.path().extension() == ".json") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("corpus") {

TEST_CASE("series match the stored goldens byte for byte")
{
    const auto graphs = corpus_graphs();
    CHECK(graphs.size() >= 25);
    for (const auto& path : graphs) {
        CAPTURE(path.filename().string());
        const fs::path golden = path.parent_path() / "series" / (path.stem().string() + ".ser");
        REQUIRE(fs::exists(golden));
        CHECK(write_factored(poincare_series(read_graph_file(path.string()))) == slurp(golden));
    }
}

TEST_CASE("pure graphs are recovered from their series")
{
    for (const auto& path : corpus_graphs()) {
        CAPTURE(path.filename().string());
        const DualGraph g = read_graph_file(path.string());
        const bool curve = g.marked_divisors().empty();
        const bool divisorial = g.arrows().empty();
        if (curve == divisorial) continue;
        const DualGraph h =
            reconstruct(poincare_series(g), curve ? ReconstructMode::curve : ReconstructMode::divisorial);
        CHECK(equivalent(g, h));
    }
}

TEST_CASE("graph files survive a write and parse")
{
    for (const auto& path : corpus_graphs()) {
        const DualGraph g = read_graph_file(path.string());
        CHECK(parse_graph_json(graph_to_json(g)) == g);
    }
}

}
