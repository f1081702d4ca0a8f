#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phifrac/compact_set.hpp"

namespace phifrac {

/// 8-bit greyscale raster, row-major, row 0 at the top.
struct PgmImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    /// Binary P5 encoding: "P5\n<w> <h>\n255\n" followed by w*h bytes.
    std::string encode() const;
};

/// Pixel (row, col) is 255 when at least one point falls in it, else 0.
/// Columns are floor((x - lo) / pitch) with pitch = (hi - lo) / width, the
/// right edge clamped into the last column; top row holds the largest
/// second coordinate. 1D sets become a 16-row strip regardless of `height`.
/// Points outside `bounds` are dropped.
PgmImage render_pgm(const CompactSet& points, std::size_t width, std::size_t height,
                    const Box& bounds);

void write_pgm(const std::filesystem::path& path, const PgmImage& image);

} // namespace phifrac
