#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "pcs/series.hpp"

namespace pcs {

// Series text format:
//   vars r mode {factored|expanded} bound B
//   k  e_1 ... e_r      (factored: one factor per line)
//   c  e_1 ... e_r      (expanded: nonzero coefficients only)
// Body lines are written in graded-lex order of the exponent. For factored
// series the bound is the truncation that suffices to expand every factor.
struct SeriesFile {
    std::variant<FactoredSeries, TruncatedSeries> series;
    std::int64_t bound = 0;

    bool is_factored() const { return std::holds_alternative<FactoredSeries>(series); }
};

SeriesFile parse_series_text(const std::string& text);
std::string write_series_text(const SeriesFile& file);

std::string write_factored(const FactoredSeries& f);
std::string write_expanded(const TruncatedSeries& s);

SeriesFile read_series_file(const std::string& path);

} // namespace pcs
