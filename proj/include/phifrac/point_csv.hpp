#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "phifrac/compact_set.hpp"

namespace phifrac {

/// Rows of comma-separated reals. Blank lines and lines starting with '#'
/// are skipped. Every row must have the same number of columns.
std::vector<std::vector<double>> read_csv_rows(std::istream& in);

/// One point per row; columns are coordinates.
CompactSet read_point_csv(std::istream& in, double resolution = 0.0);
CompactSet read_point_csv(const std::filesystem::path& path, double resolution = 0.0);

void write_point_csv(std::ostream& out, const CompactSet& set, const std::string& comment = {});
void write_point_csv(const std::filesystem::path& path, const CompactSet& set,
                     const std::string& comment = {});

/// 17 significant digits, round-trips every double.
std::string format_real(double v);

} // namespace phifrac
