#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rmgen::heatmap {

// Linear blue (lo) -> red (hi) colour of `value`, clamped to [lo, hi].
std::array<std::uint8_t, 3> colormap(double value, double lo, double hi);

// Binary P6 image, one pixel per cell: header "P6 <n> <n> 255\n" then RGB
// triples in row-major order.
std::vector<char> encode_ppm(std::span<const float> values, int grid_n, double lo, double hi);

// Writes encode_ppm(...) to `path`; throws StorageError on failure.
void render_heatmap(std::span<const float> values, int grid_n, double lo, double hi, const std::string& path);

}  // namespace rmgen::heatmap
