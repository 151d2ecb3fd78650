#include "rmgen/heatmap.hpp"

#include <algorithm>
#include <cmath>

#include "rmgen/binary_io.hpp"
#include "rmgen/errors.hpp"

namespace rmgen::heatmap {

std::array<std::uint8_t, 3> colormap(double value, double lo, double hi) {
    double u = hi > lo ? (value - lo) / (hi - lo) : 0.0;
    u = std::clamp(std::isfinite(u) ? u : 0.0, 0.0, 1.0);
    const auto r = static_cast<std::uint8_t>(std::lround(255.0 * u));
    return {r, 0, static_cast<std::uint8_t>(255 - r)};
}

std::vector<char> encode_ppm(std::span<const float> values, int grid_n, double lo, double hi) {
    if (grid_n < 1 || values.size() != static_cast<std::size_t>(grid_n) * grid_n) {
        throw DimensionError("heatmap values do not form an n x n grid");
    }
    const std::string header = "P6 " + std::to_string(grid_n) + " " + std::to_string(grid_n) + " 255\n";
    std::vector<char> out(header.begin(), header.end());
    out.reserve(header.size() + values.size() * 3);
    for (float v : values) {
        for (auto ch : colormap(v, lo, hi)) out.push_back(static_cast<char>(ch));
    }
    return out;
}

void render_heatmap(std::span<const float> values, int grid_n, double lo, double hi, const std::string& path) {
    write_file(path, encode_ppm(values, grid_n, lo, hi));
}

}  // namespace rmgen::heatmap
