#pragma once

#include <filesystem>

#include "grfkit/types.hpp"

namespace grfkit::fuse {

/// Early fusion: planes 0-2 are R,G,B / 255, plane 3 is the GRF image / 255.
/// Dimension mismatch throws ShapeError naming both sizes.
FourChannelTensor merge_rgb_grf(const RgbImage& rgb, const GreyImage& grf);

/// Luma conversion L = round(0.299 R + 0.587 G + 0.114 B); exact on grey
/// inputs (R=G=B maps to itself).
GreyImage to_greyscale(const RgbImage& rgb);

/// 8-bit RGBA PNG interchange: alpha carries the GRF plane. write then read
/// is the identity on tensors whose values are multiples of 1/255.
void write_fused_png(const FourChannelTensor& tensor, const std::filesystem::path& path);
FourChannelTensor read_fused_png(const std::filesystem::path& path);

/// Raw tensor file: 16-byte little-endian header (magic "GRF4", u16
/// version=1, u16 reserved=0, u32 width, u32 height) followed by
/// 4*width*height float32 values, channel-major, rows top to bottom.
void export_raw_tensor(const FourChannelTensor& tensor, const std::filesystem::path& path);
FourChannelTensor import_raw_tensor(const std::filesystem::path& path);

} // namespace grfkit::fuse
