#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace grfkit {

/// Dense 2D grid of reals, row-major.
struct Field2D {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return values.size(); }
};

/// 8-bit single-channel image.
struct GreyImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// 8-bit RGB image, interleaved row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 * width * height

    std::uint8_t channel(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

/// Four planes of reals in [0,1], channel-major (R, G, B, GRF).
struct FourChannelTensor {
    int width = 0;
    int height = 0;
    std::vector<float> values; // 4 * width * height, plane by plane

    std::size_t plane_size() const { return static_cast<std::size_t>(width) * height; }
    float& at(int c, int x, int y) {
        return values[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }
    float at(int c, int x, int y) const {
        return values[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }
};

/// Row-major boolean mask; nonzero = foreground.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t size() const { return bits.size(); }
};

/// Unsigned Euclidean distances (pixel units) to the nearest foreground pixel.
struct DistanceMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

/// Positive inside foreground, negative outside, magnitude clamped to width+height.
struct SignedDistanceMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

} // namespace grfkit
