#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cipher.hpp"

namespace chaoscrypt {

// Binary PGM (P5) and PPM (P6) with maxval 255. Header comments are skipped.
ImageBuffer parse_pnm(std::span<const std::uint8_t> bytes);
// Canonical form: "P5 <w> <h> 255\n" followed by the pixels.
std::vector<std::uint8_t> encode_pnm(const ImageBuffer& image);

ImageBuffer read_image(const std::filesystem::path& path);
void write_image(const ImageBuffer& image, const std::filesystem::path& path);

// Headerless pixels; the file size must equal width * height * channels.
ImageBuffer read_raw_image(const std::filesystem::path& path, std::uint32_t width, std::uint32_t height,
                           std::uint8_t channels);

}  // namespace chaoscrypt
