#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "shadowpath/region_set.hpp"
#include "shadowpath/terrain.hpp"

namespace shadowpath {

/// 8-bit grayscale raster, one pixel per region, row 0 first.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Corridor cells not on the path are drawn with this value.
inline constexpr std::uint8_t kCorridorGray = 255;
inline constexpr std::uint8_t kPathGray = 0;

/// Pixel = round(255 * (1 - e_i)): darker means more exposed.
/// Throws std::invalid_argument if width * height != field size.
GrayImage render_exposure(std::size_t width, std::size_t height, const ExposureField& field);

void overlay_corridor(GrayImage& image, const RegionSet& corridor_regions);
void overlay_path(GrayImage& image, std::span<const RegionId> path);

/// Binary PGM (P5, maxval 255).
void write_pgm(std::ostream& out, const GrayImage& image);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace shadowpath
