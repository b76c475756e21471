#pragma once

#include <filesystem>

#include "moaoff/image.hpp"

namespace moaoff {

/// Reads a P5 (binary) or P2 (ASCII) PGM with maxval <= 255. '#' comments in
/// the header are skipped. Malformed input raises ParseError naming the byte
/// offset; a P6/P3 magic is rejected with a pointer to load_ppm_as_gray.
GrayImage load_pgm(const std::filesystem::path& path);

/// Reads a P6 (binary) or P3 (ASCII) PPM and converts each pixel with the
/// integer Rec.601 luma: (299*R + 587*G + 114*B + 500) / 1000.
GrayImage load_ppm_as_gray(const std::filesystem::path& path);

/// Writes a binary P5 PGM with maxval 255.
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Dispatches on the file extension: .ppm (any case) goes through
/// load_ppm_as_gray, everything else through load_pgm.
GrayImage load_image_auto(const std::filesystem::path& path);

} // namespace moaoff
