#include "grfkit/tensorfuse.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "grfkit/errors.hpp"
#include "grfkit/imageio.hpp"

namespace grfkit::fuse {
namespace {

std::string dims(int w, int h) {
    return std::to_string(w) + "x" + std::to_string(h);
}

void check_tensor(const FourChannelTensor& tensor) {
    if (tensor.width < 1 || tensor.height < 1) {
        throw ShapeError("tensor has empty dimensions " + dims(tensor.width, tensor.height));
    }
    if (tensor.values.size() != 4 * tensor.plane_size()) {
        throw ShapeError("tensor buffer does not hold 4 planes of "
                         + dims(tensor.width, tensor.height));
    }
    for (float v : tensor.values) {
        if (!(v >= 0.0f && v <= 1.0f)) {
            throw RangeError("tensor value outside [0, 1]");
        }
    }
}

std::uint8_t quantize(float v) {
    const long q = std::lround(static_cast<double>(v) * 255.0);
    return static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<char>((v >> shift) & 0xff));
    }
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8)
           | (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

FourChannelTensor merge_rgb_grf(const RgbImage& rgb, const GreyImage& grf) {
    if (rgb.width != grf.width || rgb.height != grf.height) {
        throw ShapeError("cannot fuse " + dims(rgb.width, rgb.height) + " RGB image with "
                         + dims(grf.width, grf.height) + " GRF image");
    }
    if (rgb.width < 1 || rgb.height < 1) {
        throw ShapeError("cannot fuse empty images");
    }
    FourChannelTensor tensor;
    tensor.width = rgb.width;
    tensor.height = rgb.height;
    const size_t plane = tensor.plane_size();
    tensor.values.resize(4 * plane);
    for (size_t i = 0; i < plane; ++i) {
        tensor.values[0 * plane + i] = static_cast<float>(rgb.pixels[3 * i + 0]) / 255.0f;
        tensor.values[1 * plane + i] = static_cast<float>(rgb.pixels[3 * i + 1]) / 255.0f;
        tensor.values[2 * plane + i] = static_cast<float>(rgb.pixels[3 * i + 2]) / 255.0f;
        tensor.values[3 * plane + i] = static_cast<float>(grf.pixels[i]) / 255.0f;
    }
    return tensor;
}

GreyImage to_greyscale(const RgbImage& rgb) {
    GreyImage grey;
    grey.width = rgb.width;
    grey.height = rgb.height;
    const size_t n = static_cast<size_t>(rgb.width) * static_cast<size_t>(rgb.height);
    grey.pixels.resize(n);
    for (size_t i = 0; i < n; ++i) {
        // Integer luma with round-half-up; exact identity when R=G=B since
        // the weights sum to 1000.
        const unsigned r = rgb.pixels[3 * i + 0];
        const unsigned g = rgb.pixels[3 * i + 1];
        const unsigned b = rgb.pixels[3 * i + 2];
        grey.pixels[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
    return grey;
}

void write_fused_png(const FourChannelTensor& tensor, const std::filesystem::path& path) {
    check_tensor(tensor);
    io::RgbaImage rgba;
    rgba.width = tensor.width;
    rgba.height = tensor.height;
    const size_t plane = tensor.plane_size();
    rgba.pixels.resize(4 * plane);
    for (size_t i = 0; i < plane; ++i) {
        for (int c = 0; c < 4; ++c) {
            rgba.pixels[4 * i + c] = quantize(tensor.values[c * plane + i]);
        }
    }
    io::write_png_rgba(path, rgba);
}

FourChannelTensor read_fused_png(const std::filesystem::path& path) {
    io::RgbaImage rgba = io::read_png_rgba(path);
    FourChannelTensor tensor;
    tensor.width = rgba.width;
    tensor.height = rgba.height;
    const size_t plane = tensor.plane_size();
    tensor.values.resize(4 * plane);
    for (size_t i = 0; i < plane; ++i) {
        for (int c = 0; c < 4; ++c) {
            tensor.values[c * plane + i] = static_cast<float>(rgba.pixels[4 * i + c]) / 255.0f;
        }
    }
    return tensor;
}

void export_raw_tensor(const FourChannelTensor& tensor, const std::filesystem::path& path) {
    check_tensor(tensor);
    std::string blob;
    blob.reserve(16 + tensor.values.size() * 4);
    blob += "GRF4";
    put_u16(blob, 1); // version
    put_u16(blob, 0); // reserved
    put_u32(blob, static_cast<std::uint32_t>(tensor.width));
    put_u32(blob, static_cast<std::uint32_t>(tensor.height));
    for (float v : tensor.values) {
        std::uint32_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof bits);
        put_u32(blob, bits);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    out.flush();
    if (!out) throw IoError("failed to write " + path.string());
}

FourChannelTensor import_raw_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed to read " + path.string());
    if (blob.size() < 16 || blob.compare(0, 4, "GRF4") != 0) {
        throw FormatError(path.string() + ": not a GRF4 tensor file");
    }
    const auto* bytes = reinterpret_cast<const unsigned char*>(blob.data());
    const std::uint32_t version = bytes[4] | (static_cast<std::uint32_t>(bytes[5]) << 8);
    if (version != 1) {
        throw FormatError(path.string() + ": unsupported GRF4 version " + std::to_string(version));
    }
    const std::uint32_t w = get_u32(bytes + 8);
    const std::uint32_t h = get_u32(bytes + 12);
    if (w < 1 || h < 1 || w > (1u << 20) || h > (1u << 20)) {
        throw FormatError(path.string() + ": unreasonable tensor dimensions");
    }
    const size_t plane = static_cast<size_t>(w) * static_cast<size_t>(h);
    if (blob.size() != 16 + 4 * plane * 4) {
        throw FormatError(path.string() + ": truncated or oversized GRF4 payload");
    }
    FourChannelTensor tensor;
    tensor.width = static_cast<int>(w);
    tensor.height = static_cast<int>(h);
    tensor.values.resize(4 * plane);
    for (size_t i = 0; i < tensor.values.size(); ++i) {
        const std::uint32_t bits = get_u32(bytes + 16 + 4 * i);
        float v;
        std::memcpy(&v, &bits, sizeof v);
        if (!(v >= 0.0f && v <= 1.0f)) {
            throw FormatError(path.string() + ": tensor value outside [0, 1]");
        }
        tensor.values[i] = v;
    }
    return tensor;
}

} // namespace grfkit::fuse
