#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edsm/indicators.hpp"

namespace edsm::harness {

// Squared-normalized field mapped linearly to 0..65535. Pixel (row, col) is
// grid point (a = col, b = ny - 1 - row), so row 0 is the top of the y-range.
// Throws NumericError for a field whose maximum is not positive.
std::vector<std::uint16_t> heatmap_pixels(const IndicatorField& field);

// Binary P5 PGM, maxval 65535, big-endian samples.
std::string render_heatmap(const IndicatorField& field);

// "x,y,value" header then one row per grid point in storage order.
std::string field_csv(const IndicatorField& field);

// Image row holding grid row b; the image column equals the grid column.
inline int pixel_row(const SamplingGrid& grid, int b) { return grid.ny - 1 - b; }

std::string sha256_hex(const std::string& bytes);

// Creates parent directories as needed; throws IoError.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace edsm::harness
