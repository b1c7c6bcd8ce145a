#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "grfkit/types.hpp"

namespace grfkit::io {

/// 8-bit RGBA plane bundle used for fused PNG interchange.
struct RgbaImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 4 * width * height, interleaved
};

/// Read a wound image (PNG or JPEG by content sniffing) as 8-bit RGB.
/// Grey and palette PNGs are expanded; an alpha channel is stripped.
RgbImage read_image_rgb(const std::filesystem::path& path);

/// Read an 8-bit single-channel PNG. Anything else is a FormatError.
GreyImage read_png_grey(const std::filesystem::path& path);

/// Read an 8-bit RGBA PNG; a file without an alpha channel is a FormatError
/// ("expected 4 channels").
RgbaImage read_png_rgba(const std::filesystem::path& path);

void write_png_grey(const std::filesystem::path& path, const GreyImage& image);
void write_png_rgba(const std::filesystem::path& path, const RgbaImage& image);

/// Mask PNG loading: single-channel, pixel >= 128 is foreground.
BinaryMask read_mask_png(const std::filesystem::path& path);
/// Mask PNG writing: foreground = 255, background = 0.
void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask);

} // namespace grfkit::io
