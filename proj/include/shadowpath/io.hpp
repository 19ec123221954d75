#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "shadowpath/terrain.hpp"

namespace shadowpath {

/// Raised for malformed heightmap or field-cache files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Heightmap text format:
//   width height cell_size
//   <height rows of width space-separated elevations, row 0 first>
Heightmap read_heightmap(std::istream& in);
Heightmap load_heightmap(const std::filesystem::path& path);
void write_heightmap(std::ostream& out, const Heightmap& map);
void save_heightmap(const std::filesystem::path& path, const Heightmap& map);

// Exposure field cache: "EXPF", u32 little-endian n, then n rows of
// ceil(n/8) bytes, bit j of a row stored in byte j/8 at bit position j%8.
// Loading validates reflexivity and symmetry.
void write_field_cache(std::ostream& out, const ExposureField& field);
ExposureField read_field_cache(std::istream& in);
void save_field_cache(const std::filesystem::path& path, const ExposureField& field);
ExposureField load_field_cache(const std::filesystem::path& path);

/// 64-bit FNV-1a over raw bytes; used to key field caches to map contents.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace shadowpath
