#include "pcs/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pcs/errors.hpp"
#include "pcs/graph_io.hpp"
#include "pcs/oracle.hpp"
#include "pcs/poincare.hpp"
#include "pcs/reconstruct.hpp"
#include "pcs/series_io.hpp"

namespace pcs {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_input = 2;
constexpr int exit_internal = 3;

struct Options {
    std::string mode = "div";
    std::uint64_t seed = 1;
    int max_vertices = 30;
    int r = 1;
    int trials = 100;
    int bound = -1;
    int p = 1;
    bool expand = false;
    bool pretty = false;
    bool verbose = false;
    std::string input;
    std::string other;
    std::string output;
};

InstanceMode instance_mode(const std::string& mode) { return mode == "curve" ? InstanceMode::curve : InstanceMode::divisorial; }

ReconstructMode reconstruct_mode(const std::string& mode)
{
    return mode == "curve" ? ReconstructMode::curve : ReconstructMode::divisorial;
}

void emit(const Options& opt, const std::string& text)
{
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output);
    if (!out) throw InputError("cannot write " + opt.output);
    out << text;
}

std::string variable_name(int r, int i) { return r == 1 ? "t" : "t" + std::to_string(i + 1); }

// 1 + t^2 + 2 t1 t2^3 - ...
std::string pretty_series(const TruncatedSeries& s)
{
    std::string out;
    for (std::size_t i : s.graded_lex_order()) {
        BigInt c = s.flat(i);
        if (c == 0) continue;
        const Exponent e = s.exponent(i);
        const bool constant = std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (c < 0) c = -c;
        std::string monomial;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!monomial.empty()) monomial += " ";
            monomial += variable_name(s.variables(), static_cast<int>(j));
            if (e[j] > 1) monomial += "^" + std::to_string(e[j]);
        }
        if (constant) {
            out += c.str();
        } else {
            if (c != 1) out += c.str() + " ";
            out += monomial;
        }
    }
    return (out.empty() ? "0" : out) + "\n";
}

int cmd_gen(const Options& opt)
{
    if (opt.max_vertices < 1) throw InputError("--max-vertices must be positive");
    if (opt.r < 1) throw InputError("--r must be positive");
    const DualGraph g = random_instance(opt.seed, {opt.max_vertices, opt.r, instance_mode(opt.mode)});
    emit(opt, graph_to_json(g));
    return exit_ok;
}

int cmd_series(const Options& opt)
{
    const DualGraph g = read_graph_file(opt.input);
    const FactoredSeries p = poincare_series(g);
    if (!opt.expand) {
        emit(opt, write_factored(p));
        return exit_ok;
    }
    const int bound = opt.bound >= 0 ? opt.bound : static_cast<int>(p.max_coordinate());
    const TruncatedSeries s = expand(p, bound);
    emit(opt, opt.pretty ? pretty_series(s) : write_expanded(s));
    return exit_ok;
}

int cmd_reconstruct(const Options& opt)
{
    const SeriesFile file = read_series_file(opt.input);
    const ReconstructMode mode = reconstruct_mode(opt.mode);
    if (file.is_factored()) {
        emit(opt, graph_to_json(reconstruct(std::get<FactoredSeries>(file.series), mode)));
        return exit_ok;
    }
    const auto& s = std::get<TruncatedSeries>(file.series);
    const int bound = opt.bound >= 0 ? std::min(opt.bound, s.bound()) : s.bound();
    FactoredSeries f;
    try {
        f = factorize(s, bound);
    } catch (const InsufficientBound& e) {
        std::cerr << "incomplete: " << e.what() << "\n";
        return exit_input;
    }
    const DualGraph g = reconstruct(f, mode);
    if (!(expand(poincare_series(g), s.bound()) == s)) {
        throw VerificationError("reconstructed graph does not reproduce the expanded series");
    }
    std::cerr << "complete: factors up to degree " << bound << ", all coefficients up to " << s.bound()
              << " reproduced\n";
    emit(opt, graph_to_json(g));
    return exit_ok;
}

std::string parents_text(const std::vector<VertexId>& ps)
{
    std::string out = "[";
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? " " : "") + std::to_string(ps[i]);
    return out + "]";
}

int cmd_equiv(const Options& opt)
{
    const DualGraph a = read_graph_file(opt.input);
    const DualGraph b = read_graph_file(opt.other);
    if (equivalent(a, b)) {
        std::cout << "equivalent\n";
        return exit_ok;
    }
    std::cout << "not equivalent\n";
    std::cout << "vertices: " << a.size() << " vs " << b.size() << "\n";
    const auto pa = a.parent_lists();
    const auto pb = b.parent_lists();
    for (std::size_t i = 0; i < std::max(pa.size(), pb.size()); ++i) {
        const std::string sa = i < pa.size() ? parents_text(pa[i]) : "-";
        const std::string sb = i < pb.size() ? parents_text(pb[i]) : "-";
        if (sa != sb) std::cout << "vertex " << i + 1 << " parents: " << sa << " vs " << sb << "\n";
    }
    auto marks = [](const DualGraph& g) { return parents_text(g.marked_divisors()); };
    if (marks(a) != marks(b)) std::cout << "marked divisors: " << marks(a) << " vs " << marks(b) << "\n";
    auto arrows = [](const DualGraph& g) {
        std::string out;
        for (const Arrow& x : g.arrows()) out += (out.empty() ? "" : " ") + std::to_string(x.branch) + "@" + std::to_string(x.vertex);
        return "[" + out + "]";
    };
    if (arrows(a) != arrows(b)) std::cout << "arrows: " << arrows(a) << " vs " << arrows(b) << "\n";
    std::cout << "code A: " << canonical_code(a) << "\n";
    std::cout << "code B: " << canonical_code(b) << "\n";
    return exit_negative;
}

struct TrialResult {
    std::uint64_t seed = 0;
    int vertices = 0;
    int r = 0;
    bool ok = false;
    std::string error;
};

TrialResult run_trial(std::uint64_t seed, const Options& opt)
{
    TrialResult res;
    res.seed = seed;
    std::mt19937_64 rng(seed);
    res.r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.r));
    try {
        const DualGraph g = random_instance(seed, {opt.max_vertices, res.r, instance_mode(opt.mode)});
        res.vertices = g.size();
        const DualGraph h = reconstruct(poincare_series(g), reconstruct_mode(opt.mode));
        res.ok = equivalent(g, h);
        if (!res.ok) res.error = "reconstructed graph is not equivalent";
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

int cmd_roundtrip(const Options& opt)
{
    if (opt.trials < 0) throw InputError("--trials must be non-negative");
    if (opt.max_vertices < 1) throw InputError("--max-vertices must be positive");
    if (opt.r < 1) throw InputError("--r must be positive");
    std::vector<TrialResult> results(static_cast<std::size_t>(opt.trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < opt.trials; k = next++) results[k] = run_trial(opt.seed + k, opt);
    };
    const unsigned threads = std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(opt.trials)));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int passed = 0;
    for (int k = 0; k < opt.trials; ++k) {
        const TrialResult& t = results[k];
        std::cout << "trial=" << k << " seed=" << t.seed << " vertices=" << t.vertices << " r=" << t.r
                  << " status=" << (t.ok ? "ok" : "FAIL") << "\n";
        if (t.ok) ++passed;
        else std::cerr << "trial " << k << ": " << t.error << "\n";
    }
    std::cout << "passed " << passed << "/" << opt.trials << "\n";
    return passed == opt.trials ? exit_ok : exit_internal;
}

int cmd_oracle_check(const Options& opt)
{
    const DualGraph g = read_graph_file(opt.input);
    const ValuationSpec spec = default_spec(g);
    const int r = static_cast<int>(spec.size());
    if (opt.bound < r) throw InputError("--bound must be at least the number of valuations");
    const TruncatedSeries oracle = definitional_poincare(g, spec, opt.bound);
    const TruncatedSeries formula = expand(poincare_series(g, spec), oracle.bound());
    int mismatches = 0;
    std::size_t checked = 0;
    for (std::size_t i : formula.graded_lex_order()) {
        ++checked;
        const BigInt& a = formula.flat(i);
        const BigInt& b = oracle.flat(i);
        if (a == b && (a == 0 || !opt.verbose)) continue;
        if (a != b) ++mismatches;
        const Exponent e = formula.exponent(i);
        for (std::int64_t x : e) std::cout << x << " ";
        std::cout << "formula=" << a << " oracle=" << b << (a == b ? " ok" : " MISMATCH") << "\n";
    }
    std::cout << "region=0.." << oracle.bound() << " coefficients=" << checked << " mismatches=" << mismatches << "\n";
    return mismatches == 0 ? exit_ok : exit_internal;
}

int cmd_fig2(const Options& opt)
{
    const DualGraph g = counterexample_graph(opt.p);
    if (!opt.output.empty()) {
        std::ofstream out(opt.output);
        if (!out) throw InputError("cannot write " + opt.output);
        out << graph_to_json(g);
    }
    const FactoredSeries p = poincare_series(g);
    std::cout << write_factored(p);
    if (!(p == FactoredSeries(2, {{{1, 2}, -1}}))) throw VerificationError("series differs from (1 - t u^2)^{-1}");
    return exit_ok;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Poincare series of plane valuations and curves, and reconstruction of their resolution graphs"};
    app.require_subcommand(1);
    Options opt;

    auto add_mode = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--mode", opt.mode, "div or curve")->check(CLI::IsMember({"div", "curve"}));
        if (required) o->required();
    };

    auto* gen = app.add_subcommand("gen", "Generate a random resolution graph");
    add_mode(gen, true);
    gen->add_option("--seed", opt.seed)->required();
    gen->add_option("--max-vertices", opt.max_vertices)->required();
    gen->add_option("--r", opt.r)->required();
    gen->add_option("-o,--output", opt.output);

    auto* series = app.add_subcommand("series", "Poincare series of a graph");
    series->add_option("graph", opt.input)->required();
    series->add_flag("--expand", opt.expand);
    series->add_option("--bound", opt.bound)->check(CLI::NonNegativeNumber);
    series->add_flag("--pretty", opt.pretty, "with --expand, print one polynomial line");
    series->add_option("-o,--output", opt.output);

    auto* recon = app.add_subcommand("reconstruct", "Rebuild the graph from a series");
    recon->add_option("series", opt.input)->required();
    add_mode(recon, true);
    recon->add_option("--bound", opt.bound)->check(CLI::NonNegativeNumber);
    recon->add_option("-o,--output", opt.output);

    auto* equiv = app.add_subcommand("equiv", "Combinatorial equivalence of two graphs");
    equiv->add_option("a", opt.input)->required();
    equiv->add_option("b", opt.other)->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "Random graph -> series -> graph campaign");
    add_mode(roundtrip, true);
    roundtrip->add_option("--trials", opt.trials)->required();
    roundtrip->add_option("--seed", opt.seed)->required();
    roundtrip->add_option("--max-vertices", opt.max_vertices);
    roundtrip->add_option("--r", opt.r);

    auto* oracle = app.add_subcommand("oracle-check", "Compare the product formula with the definition");
    oracle->add_option("graph", opt.input)->required();
    oracle->add_option("--bound", opt.bound)->required();
    oracle->add_flag("--verbose", opt.verbose, "also list matching nonzero coefficients");

    auto* fig2 = app.add_subcommand("fig2", "Two-valuation graphs with equal mixed series");
    fig2->add_option("--p", opt.p)->required()->check(CLI::PositiveNumber);
    fig2->add_option("--graph-out", opt.output, "write the graph JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*gen) return cmd_gen(opt);
        if (*series) return cmd_series(opt);
        if (*recon) return cmd_reconstruct(opt);
        if (*equiv) return cmd_equiv(opt);
        if (*roundtrip) return cmd_roundtrip(opt);
        if (*oracle) return cmd_oracle_check(opt);
        if (*fig2) return cmd_fig2(opt);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const InsufficientBound& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}

} // namespace pcs
