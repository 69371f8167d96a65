#include "pcs/series_io.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "pcs/errors.hpp"

namespace pcs {

namespace {

std::string exponent_tail(const Exponent& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) out += (i == 0 ? "  " : " ") + std::to_string(e[i]);
    return out;
}

std::string header(int r, const char* mode, std::int64_t bound)
{
    return "vars " + std::to_string(r) + " mode " + mode + " bound " + std::to_string(bound) + "\n";
}

} // namespace

std::string write_series_text(const SeriesFile& file)
{
    std::string out;
    if (const auto* f = std::get_if<FactoredSeries>(&file.series)) {
        out = header(f->variables(), "factored", file.bound);
        for (const auto& [m, k] : f->factors()) out += std::to_string(k) + exponent_tail(m) + "\n";
        return out;
    }
    const auto& s = std::get<TruncatedSeries>(file.series);
    out = header(s.variables(), "expanded", s.bound());
    for (std::size_t i : s.graded_lex_order()) {
        if (s.flat(i) == 0) continue;
        out += s.flat(i).str() + exponent_tail(s.exponent(i)) + "\n";
    }
    return out;
}

std::string write_factored(const FactoredSeries& f)
{
    return write_series_text({f, f.max_coordinate() + 1});
}

std::string write_expanded(const TruncatedSeries& s) { return write_series_text({s, s.bound()}); }

SeriesFile parse_series_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InputError("series text is empty");
    std::istringstream hs(line);
    std::string kw_vars, kw_mode, mode, kw_bound;
    long long r = -1;
    long long bound = -1;
    if (!(hs >> kw_vars >> r >> kw_mode >> mode >> kw_bound >> bound) || kw_vars != "vars" || kw_mode != "mode" ||
        kw_bound != "bound") {
        throw InputError("series header must be 'vars r mode {factored|expanded} bound B'");
    }
    std::string extra;
    if (hs >> extra) throw InputError("trailing text in series header");
    if (r < 0 || r > 16) throw InputError("variable count out of range");
    if (bound < 0) throw InputError("negative bound");
    if (mode != "factored" && mode != "expanded") throw InputError("unknown series mode '" + mode + "'");
    if (mode == "expanded" && bound > 100000) throw InputError("expanded bound too large");

    FactoredSeries f(static_cast<int>(r));
    std::optional<TruncatedSeries> s;
    if (mode == "expanded") s.emplace(static_cast<int>(r), static_cast<int>(bound));
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string coeff;
        ls >> coeff;
        Exponent e;
        long long x = 0;
        while (ls >> x) e.push_back(x);
        if (!ls.eof()) throw InputError("line " + std::to_string(lineno) + ": malformed exponent");
        if (static_cast<long long>(e.size()) != r) {
            throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(r) + " exponents");
        }
        BigInt c;
        try {
            c = BigInt(coeff);
        } catch (const std::exception&) {
            throw InputError("line " + std::to_string(lineno) + ": bad coefficient '" + coeff + "'");
        }
        if (c == 0) throw InputError("line " + std::to_string(lineno) + ": zero coefficient");
        if (s) {
            if (!s->in_box(e)) throw InputError("line " + std::to_string(lineno) + ": exponent outside the bound");
            if (s->at(e) != 0) throw InputError("line " + std::to_string(lineno) + ": repeated exponent");
            s->at(e) = c;
        } else {
            if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) {
                throw InputError("line " + std::to_string(lineno) + ": multiplicity out of range");
            }
            if (f.multiplicity(e) != 0) throw InputError("line " + std::to_string(lineno) + ": repeated exponent");
            f.multiply_factor(e, static_cast<std::int64_t>(c));
        }
    }
    if (s) return {std::move(*s), bound};
    return {std::move(f), bound};
}

SeriesFile read_series_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_series_text(ss.str());
}

} // namespace pcs
