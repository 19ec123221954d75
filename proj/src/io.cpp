#include "shadowpath/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace shadowpath {

namespace {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw FormatError("heightmap: cannot format value");
    return {buf.data(), end};
}

double parse_double(const std::string& tok, const std::string& what) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size() || !std::isfinite(v))
        throw FormatError("heightmap: invalid " + what + " '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, const std::string& what) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size() || v == 0)
        throw FormatError("heightmap: invalid " + what + " '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Heightmap read_heightmap(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("heightmap: missing header line");
    auto header = split(line);
    if (header.size() != 3) throw FormatError("heightmap: header must be 'width height cell_size'");
    Heightmap map(parse_count(header[0], "width"), parse_count(header[1], "height"),
                  parse_double(header[2], "cell_size"));
    if (!(map.cell_size > 0.0)) throw FormatError("heightmap: cell_size must be positive");
    for (std::size_t r = 0; r < map.height; ++r) {
        if (!std::getline(in, line))
            throw FormatError("heightmap: expected " + std::to_string(map.height) + " rows, found " + std::to_string(r));
        auto toks = split(line);
        if (toks.size() != map.width)
            throw FormatError("heightmap: row " + std::to_string(r) + " has " + std::to_string(toks.size()) +
                              " values, expected " + std::to_string(map.width));
        for (std::size_t c = 0; c < map.width; ++c) map.at(r, c) = parse_double(toks[c], "elevation");
    }
    while (std::getline(in, line))
        if (!split(line).empty()) throw FormatError("heightmap: trailing data after last row");
    return map;
}

void write_heightmap(std::ostream& out, const Heightmap& map) {
    out << map.width << ' ' << map.height << ' ' << format_double(map.cell_size) << '\n';
    for (std::size_t r = 0; r < map.height; ++r) {
        for (std::size_t c = 0; c < map.width; ++c) {
            if (c != 0) out << ' ';
            out << format_double(map.at(r, c));
        }
        out << '\n';
    }
}

Heightmap load_heightmap(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open heightmap '" + path.string() + "'");
    return read_heightmap(in);
}

void save_heightmap(const std::filesystem::path& path, const Heightmap& map) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write heightmap '" + path.string() + "'");
    write_heightmap(out, map);
    if (!out) throw std::runtime_error("failed writing heightmap '" + path.string() + "'");
}

void write_field_cache(std::ostream& out, const ExposureField& field) {
    const auto n = static_cast<std::uint32_t>(field.size());
    out.write("EXPF", 4);
    const std::array<char, 4> len{static_cast<char>(n & 0xFF), static_cast<char>((n >> 8) & 0xFF),
                                  static_cast<char>((n >> 16) & 0xFF), static_cast<char>((n >> 24) & 0xFF)};
    out.write(len.data(), 4);
    const std::size_t row_bytes = (n + 7) / 8;
    std::vector<char> row(row_bytes);
    for (RegionId i = 0; i < n; ++i) {
        std::fill(row.begin(), row.end(), 0);
        field.exposure_set(i).for_each([&](std::size_t j) { row[j / 8] = static_cast<char>(row[j / 8] | (1 << (j % 8))); });
        out.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
}

ExposureField read_field_cache(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || std::string_view(magic.data(), 4) != "EXPF")
        throw FormatError("field cache: bad magic");
    std::array<unsigned char, 4> len{};
    if (!in.read(reinterpret_cast<char*>(len.data()), 4)) throw FormatError("field cache: truncated header");
    const std::uint32_t n = len[0] | (len[1] << 8) | (len[2] << 16) | (static_cast<std::uint32_t>(len[3]) << 24);
    const std::size_t row_bytes = (static_cast<std::size_t>(n) + 7) / 8;
    std::vector<RegionSet> rows;
    rows.reserve(n);
    std::vector<unsigned char> buf(row_bytes);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(row_bytes)))
            throw FormatError("field cache: truncated at row " + std::to_string(i));
        RegionSet row(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((buf[j / 8] >> (j % 8)) & 1U) row.set(j);
        for (std::size_t j = n; j < row_bytes * 8; ++j)
            if ((buf[j / 8] >> (j % 8)) & 1U) throw FormatError("field cache: padding bits set in row " + std::to_string(i));
        rows.push_back(std::move(row));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("field cache: trailing bytes");
    try {
        return ExposureField(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("field cache: ") + e.what());
    }
}

void save_field_cache(const std::filesystem::path& path, const ExposureField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write field cache '" + path.string() + "'");
    write_field_cache(out, field);
    if (!out) throw std::runtime_error("failed writing field cache '" + path.string() + "'");
}

ExposureField load_field_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field cache '" + path.string() + "'");
    return read_field_cache(in);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace shadowpath
