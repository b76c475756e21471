#pragma once

#include <cstdint>
#include <vector>

#include "moaoff/error.hpp"

namespace moaoff {

/// 8-bit luminance grid, row-major, height*width pixels.
struct GrayImage {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)];
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    }
};

inline GrayImage make_gray_image(int height, int width, std::vector<std::uint8_t> pixels) {
    if (height < 1 || width < 1) {
        throw DomainError("image dimensions must be at least 1x1");
    }
    if (pixels.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
        throw DomainError("pixel buffer size does not match height*width");
    }
    return GrayImage{height, width, std::move(pixels)};
}

inline GrayImage constant_image(int height, int width, std::uint8_t value) {
    return make_gray_image(height, width,
                           std::vector<std::uint8_t>(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), value));
}

} // namespace moaoff
