#include "shadowpath/render.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace shadowpath {

GrayImage render_exposure(std::size_t width, std::size_t height, const ExposureField& field) {
    if (width * height != field.size())
        throw std::invalid_argument("render: " + std::to_string(width) + "x" + std::to_string(height) +
                                    " image does not match " + std::to_string(field.size()) + " regions");
    GrayImage img{width, height, std::vector<std::uint8_t>(field.size())};
    const auto n = static_cast<double>(field.size());
    for (RegionId i = 0; i < field.size(); ++i) {
        const double exposed = static_cast<double>(field.exposure_count(i));
        img.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * (n - exposed) / n));
    }
    return img;
}

void overlay_corridor(GrayImage& image, const RegionSet& corridor_regions) {
    if (corridor_regions.size() != image.pixels.size())
        throw std::invalid_argument("render: corridor size does not match image");
    corridor_regions.for_each([&](std::size_t i) { image.pixels[i] = kCorridorGray; });
}

void overlay_path(GrayImage& image, std::span<const RegionId> path) {
    for (auto r : path) {
        if (r >= image.pixels.size()) throw std::invalid_argument("render: path region outside image");
        image.pixels[r] = kPathGray;
    }
}

void write_pgm(std::ostream& out, const GrayImage& image) {
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void save_pgm(const std::filesystem::path& path, const GrayImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write image '" + path.string() + "'");
    write_pgm(out, image);
    if (!out) throw std::runtime_error("failed writing image '" + path.string() + "'");
}

}  // namespace shadowpath
