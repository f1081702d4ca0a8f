#include "phifrac/point_csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "phifrac/error.hpp"

namespace phifrac {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(std::string_view field, std::size_t line_no) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        fail(ErrorKind::InvalidInput,
             "CSV line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
    return v;
}

} // namespace

std::vector<std::vector<double>> read_csv_rows(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            row.push_back(parse_real(body.substr(start, comma - start), line_no));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            fail(ErrorKind::InvalidInput, "CSV line " + std::to_string(line_no) +
                                              ": expected " + std::to_string(rows.front().size()) +
                                              " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

CompactSet read_point_csv(std::istream& in, double resolution) {
    const auto rows = read_csv_rows(in);
    if (rows.empty()) fail(ErrorKind::InvalidInput, "point CSV contains no rows");
    std::vector<Point> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.emplace_back(std::span<const double>(r));
    return CompactSet(std::move(pts), resolution);
}

CompactSet read_point_csv(const std::filesystem::path& path, double resolution) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path.string());
    return read_point_csv(in, resolution);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_point_csv(std::ostream& out, const CompactSet& set, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (const Point& p : set.points()) {
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) out << ',';
            out << format_real(p[i]);
        }
        out << '\n';
    }
}

void write_point_csv(const std::filesystem::path& path, const CompactSet& set,
                     const std::string& comment) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path.string());
    write_point_csv(out, set, comment);
}

} // namespace phifrac
