#include "moaoff/pnm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include "moaoff/error.hpp"

namespace moaoff {

namespace {

struct PnmReader {
    std::filesystem::path path;
    std::vector<char> data;
    std::size_t pos = 0;

    explicit PnmReader(const std::filesystem::path& p) : path(p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            throw IoError("cannot open image file: " + p.string());
        }
        data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(path.string() + ": " + what + " at byte " + std::to_string(pos));
    }

    bool eof() const { return pos >= data.size(); }

    unsigned char peek() const { return static_cast<unsigned char>(data[pos]); }

    // Whitespace and '#'-to-end-of-line comments between header tokens.
    void skip_header_space() {
        while (!eof()) {
            const unsigned char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') {
                    ++pos;
                }
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::string magic() {
        if (data.size() < 2) {
            fail("missing PNM magic");
        }
        const std::string m(data.begin(), data.begin() + 2);
        pos = 2;
        return m;
    }

    int header_int(const char* what) {
        skip_header_space();
        if (eof() || peek() < '0' || peek() > '9') {
            fail(std::string("expected ") + what);
        }
        long value = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000'000L) {
                fail(std::string("unreasonably large ") + what);
            }
            ++pos;
        }
        return static_cast<int>(value);
    }

    // P5/P6 pixel data starts after exactly one whitespace byte.
    void expect_single_space() {
        if (eof()) {
            fail("missing separator before pixel data");
        }
        const unsigned char c = peek();
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
            fail("expected whitespace before pixel data");
        }
        ++pos;
    }
};

struct PnmHeader {
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
};

PnmHeader read_header(PnmReader& r) {
    PnmHeader h;
    h.magic = r.magic();
    h.width = r.header_int("width");
    h.height = r.header_int("height");
    h.maxval = r.header_int("maxval");
    if (h.width < 1 || h.height < 1) {
        r.fail("image dimensions must be positive");
    }
    if (h.maxval < 1 || h.maxval > 255) {
        r.fail("unsupported maxval " + std::to_string(h.maxval) + " (must be 1..255)");
    }
    return h;
}

std::vector<std::uint8_t> read_raw_samples(PnmReader& r, std::size_t count, int maxval) {
    r.expect_single_space();
    if (r.data.size() - r.pos < count) {
        r.fail("truncated pixel data (expected " + std::to_string(count) + " bytes, found " +
               std::to_string(r.data.size() - r.pos) + ")");
    }
    std::vector<std::uint8_t> samples(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto v = static_cast<unsigned char>(r.data[r.pos]);
        if (v > maxval) {
            r.fail("sample value " + std::to_string(v) + " exceeds maxval");
        }
        samples[i] = v;
        ++r.pos;
    }
    return samples;
}

std::vector<std::uint8_t> read_ascii_samples(PnmReader& r, std::size_t count, int maxval) {
    std::vector<std::uint8_t> samples;
    samples.reserve(count);
    while (samples.size() < count) {
        r.skip_header_space();
        if (r.eof()) {
            r.fail("truncated pixel data (got " + std::to_string(samples.size()) + " of " +
                   std::to_string(count) + " samples)");
        }
        const int v = r.header_int("pixel value");
        if (v > maxval) {
            r.fail("sample value " + std::to_string(v) + " exceeds maxval");
        }
        samples.push_back(static_cast<std::uint8_t>(v));
    }
    return samples;
}

std::uint8_t rec601_gray(int red, int green, int blue) {
    return static_cast<std::uint8_t>((299 * red + 587 * green + 114 * blue + 500) / 1000);
}

} // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    PnmReader r(path);
    const PnmHeader h = read_header(r);
    if (h.magic == "P6" || h.magic == "P3") {
        throw ParseError(path.string() + ": " + h.magic +
                         " is a color PPM; use the PPM-to-gray loader (load_ppm_as_gray)");
    }
    if (h.magic != "P5" && h.magic != "P2") {
        throw ParseError(path.string() + ": unsupported PNM magic '" + h.magic + "' at byte 0");
    }
    const std::size_t count = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    auto samples = (h.magic == "P5") ? read_raw_samples(r, count, h.maxval)
                                     : read_ascii_samples(r, count, h.maxval);
    return make_gray_image(h.height, h.width, std::move(samples));
}

GrayImage load_ppm_as_gray(const std::filesystem::path& path) {
    PnmReader r(path);
    const PnmHeader h = read_header(r);
    if (h.magic != "P6" && h.magic != "P3") {
        throw ParseError(path.string() + ": expected a P6/P3 PPM, found magic '" + h.magic + "'");
    }
    const std::size_t count = 3 * static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    auto samples = (h.magic == "P6") ? read_raw_samples(r, count, h.maxval)
                                     : read_ascii_samples(r, count, h.maxval);
    std::vector<std::uint8_t> gray(count / 3);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = rec601_gray(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
    }
    return make_gray_image(h.height, h.width, std::move(gray));
}

GrayImage load_image_auto(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".ppm") {
        return load_ppm_as_gray(path);
    }
    return load_pgm(path);
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace moaoff
