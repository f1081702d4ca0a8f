#include "phifrac/cli/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "phifrac/error.hpp"

namespace phifrac {

namespace {

constexpr std::size_t kStripHeight = 16;

/// Cell index of v in [lo, hi] split into n cells, or -1 when outside.
long long cell(double v, double lo, double hi, std::size_t n) {
    if (v < lo || v > hi) return -1;
    if (hi == lo) return 0;
    const double pitch = (hi - lo) / static_cast<double>(n);
    const auto c = static_cast<long long>(std::floor((v - lo) / pitch));
    return std::clamp(c, 0LL, static_cast<long long>(n) - 1);
}

} // namespace

std::string PgmImage::encode() const {
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(pixels.begin(), pixels.end());
    return out;
}

PgmImage render_pgm(const CompactSet& points, std::size_t width, std::size_t height,
                    const Box& bounds) {
    if (width == 0 || height == 0) fail(ErrorKind::InvalidInput, "raster needs width, height >= 1");
    if (bounds.dim() != points.dim())
        fail(ErrorKind::InvalidInput, "raster bounds and point set differ in dimension");
    PgmImage img;
    img.width = width;
    img.height = points.dim() == 1 ? kStripHeight : height;
    img.pixels.assign(img.width * img.height, 0);
    for (const Point& p : points.points()) {
        const long long col = cell(p[0], bounds.lo()[0], bounds.hi()[0], width);
        if (col < 0) continue;
        if (points.dim() == 1) {
            for (std::size_t r = 0; r < img.height; ++r) img.pixels[r * width + col] = 255;
            continue;
        }
        const long long yc = cell(p[1], bounds.lo()[1], bounds.hi()[1], img.height);
        if (yc < 0) continue;
        const std::size_t row = img.height - 1 - static_cast<std::size_t>(yc);
        img.pixels[row * width + col] = 255;
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const PgmImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path.string());
    const std::string bytes = image.encode();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace phifrac
