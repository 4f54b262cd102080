#include "edsm/harness/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <openssl/evp.h>

#include "edsm/errors.hpp"

namespace edsm::harness {

std::vector<std::uint16_t> heatmap_pixels(const IndicatorField& field) {
    const SamplingGrid& g = field.grid;
    if (static_cast<int>(field.values.size()) != g.size()) {
        throw InvalidArgument("field size does not match its grid");
    }
    const IndicatorField sq = normalize_field(field, !field.squared);
    std::vector<std::uint16_t> pixels(g.size());
    for (int b = 0; b < g.ny; ++b) {
        for (int a = 0; a < g.nx; ++a) {
            const double v = std::clamp(sq.values[b * g.nx + a], 0.0, 1.0);
            pixels[pixel_row(g, b) * g.nx + a] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
        }
    }
    return pixels;
}

std::string render_heatmap(const IndicatorField& field) {
    const auto pixels = heatmap_pixels(field);
    std::string out = "P5\n" + std::to_string(field.grid.nx) + " " + std::to_string(field.grid.ny) +
                      "\n65535\n";
    out.reserve(out.size() + 2 * pixels.size());
    for (std::uint16_t p : pixels) {
        out.push_back(static_cast<char>(p >> 8));
        out.push_back(static_cast<char>(p & 0xff));
    }
    return out;
}

std::string field_csv(const IndicatorField& field) {
    const SamplingGrid& g = field.grid;
    std::string out = "x,y,value\n";
    out.reserve(out.size() + 64 * field.values.size());
    char buf[32];
    auto put = [&](double v, char sep) {
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.append(buf, res.ptr);
        out.push_back(sep);
    };
    for (int k = 0; k < static_cast<int>(field.values.size()); ++k) {
        const Vec2 z = g.point(k);
        put(z.x(), ',');
        put(z.y(), ',');
        put(field.values[k], '\n');
    }
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace edsm::harness
