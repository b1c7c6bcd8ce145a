#include "grfkit/imageio.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>
#include <system_error>

#include <jpeglib.h>
#include <png.h>

#include "grfkit/errors.hpp"

namespace grfkit::io {
namespace {

std::string errno_text() {
    return std::generic_category().message(errno);
}

struct FileHandle {
    std::FILE* fp = nullptr;

    FileHandle(const std::filesystem::path& path, const char* mode) {
        fp = std::fopen(path.string().c_str(), mode);
        if (!fp) {
            throw IoError("cannot open " + path.string() + ": " + errno_text());
        }
    }
    ~FileHandle() {
        if (fp) std::fclose(fp);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

bool looks_like_png(const unsigned char* magic, size_t len) {
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    return len >= 8 && std::memcmp(magic, sig, 8) == 0;
}

bool looks_like_jpeg(const unsigned char* magic, size_t len) {
    return len >= 3 && magic[0] == 0xff && magic[1] == 0xd8 && magic[2] == 0xff;
}

struct PngReadCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngReadCtx() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw IoError("libpng: out of memory");
    }
    ~PngReadCtx() { png_destroy_read_struct(&png, &info, nullptr); }
    PngReadCtx(const PngReadCtx&) = delete;
    PngReadCtx& operator=(const PngReadCtx&) = delete;
};

struct PngWriteCtx {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWriteCtx() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw IoError("libpng: out of memory");
    }
    ~PngWriteCtx() { png_destroy_write_struct(&png, &info); }
    PngWriteCtx(const PngWriteCtx&) = delete;
    PngWriteCtx& operator=(const PngWriteCtx&) = delete;
};

void check_dims(const std::filesystem::path& path, png_uint_32 w, png_uint_32 h) {
    if (w < 1 || h < 1 || w > (1u << 20) || h > (1u << 20)) {
        throw FormatError(path.string() + ": unreasonable image dimensions");
    }
}

// Decode an 8-bit PNG into `out` with exactly `want_channels` channels.
// The transform set is chosen by the caller via `lenient`:
//   lenient: palette/grey/16-bit/alpha variants are converted as needed;
//   strict:  the stored layout must already match.
void read_png_pixels(const std::filesystem::path& path, int want_channels, bool lenient,
                     int* out_w, int* out_h, std::vector<std::uint8_t>* out) {
    FileHandle file(path, "rb");
    unsigned char magic[8];
    size_t got = std::fread(magic, 1, sizeof magic, file.fp);
    if (!looks_like_png(magic, got)) {
        throw FormatError(path.string() + ": not a PNG file");
    }
    std::rewind(file.fp);

    PngReadCtx ctx;
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw FormatError(path.string() + ": corrupt or unsupported PNG");
    }
    png_init_io(ctx.png, file.fp);
    png_read_info(ctx.png, ctx.info);

    png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
    png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
    check_dims(path, w, h);
    int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    int color_type = png_get_color_type(ctx.png, ctx.info);

    if (lenient) {
        if (bit_depth == 16) png_set_strip_16(ctx.png);
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
            png_set_expand_gray_1_2_4_to_8(ctx.png);
        }
        if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
        if (want_channels == 3) {
            png_set_strip_alpha(ctx.png);
            if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
                png_set_gray_to_rgb(ctx.png);
            }
        }
    }

    int passes = png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    int channels = png_get_channels(ctx.png, ctx.info);
    int depth = png_get_bit_depth(ctx.png, ctx.info);
    if (channels != want_channels || depth != 8) {
        if (want_channels == 4) {
            throw FormatError(path.string() + ": expected 4 channels, got "
                              + std::to_string(channels));
        }
        throw FormatError(path.string() + ": expected an 8-bit "
                          + std::to_string(want_channels) + "-channel image");
    }

    size_t stride = static_cast<size_t>(w) * static_cast<size_t>(want_channels);
    out->assign(stride * h, 0);
    for (int p = 0; p < passes; ++p) {
        for (png_uint_32 y = 0; y < h; ++y) {
            png_read_row(ctx.png, out->data() + y * stride, nullptr);
        }
    }
    png_read_end(ctx.png, nullptr);
    *out_w = static_cast<int>(w);
    *out_h = static_cast<int>(h);
}

void write_png_pixels(const std::filesystem::path& path, int w, int h, int channels,
                      const std::vector<std::uint8_t>& pixels) {
    if (w < 1 || h < 1) throw ShapeError("refusing to write empty image " + path.string());
    size_t stride = static_cast<size_t>(w) * static_cast<size_t>(channels);
    if (pixels.size() != stride * static_cast<size_t>(h)) {
        throw ShapeError("pixel buffer size mismatch for " + path.string());
    }

    FileHandle file(path, "wb");
    PngWriteCtx ctx;
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw IoError("failed to write " + path.string());
    }
    png_init_io(ctx.png, file.fp);
    // Pinned settings so the byte stream is reproducible run to run.
    png_set_compression_level(ctx.png, 6);
    png_set_filter(ctx.png, 0, PNG_ALL_FILTERS);
    int color_type = channels == 1 ? PNG_COLOR_TYPE_GRAY
                     : channels == 3 ? PNG_COLOR_TYPE_RGB
                                     : PNG_COLOR_TYPE_RGB_ALPHA;
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    for (int y = 0; y < h; ++y) {
        png_write_row(ctx.png, const_cast<png_bytep>(pixels.data() + y * stride));
    }
    png_write_end(ctx.png, ctx.info);
    if (std::fflush(file.fp) != 0) {
        throw IoError("failed to write " + path.string() + ": " + errno_text());
    }
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, mgr->message);
    std::longjmp(mgr->jump, 1);
}

void jpeg_emit_nothing(j_common_ptr, int) {}

RgbImage read_jpeg_rgb(const std::filesystem::path& path) {
    FileHandle file(path, "rb");
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.pub.emit_message = jpeg_emit_nothing;
    jpeg_create_decompress(&cinfo);

    RgbImage image;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw FormatError(path.string() + ": " + err.message);
    }
    jpeg_stdio_src(&cinfo, file.fp);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    image.width = static_cast<int>(cinfo.output_width);
    image.height = static_cast<int>(cinfo.output_height);
    if (image.width < 1 || image.height < 1 || cinfo.output_components != 3) {
        jpeg_destroy_decompress(&cinfo);
        throw FormatError(path.string() + ": undecodable JPEG layout");
    }
    size_t stride = static_cast<size_t>(image.width) * 3;
    image.pixels.assign(stride * static_cast<size_t>(image.height), 0);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = image.pixels.data() + cinfo.output_scanline * stride;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return image;
}

} // namespace

RgbImage read_image_rgb(const std::filesystem::path& path) {
    {
        FileHandle file(path, "rb");
        unsigned char magic[8];
        size_t got = std::fread(magic, 1, sizeof magic, file.fp);
        if (looks_like_jpeg(magic, got)) {
            // fall through to the JPEG decoder below
        } else if (looks_like_png(magic, got)) {
            RgbImage image;
            read_png_pixels(path, 3, /*lenient=*/true, &image.width, &image.height,
                            &image.pixels);
            return image;
        } else {
            throw FormatError(path.string() + ": unrecognized image format");
        }
    }
    return read_jpeg_rgb(path);
}

GreyImage read_png_grey(const std::filesystem::path& path) {
    GreyImage image;
    read_png_pixels(path, 1, /*lenient=*/false, &image.width, &image.height, &image.pixels);
    return image;
}

RgbaImage read_png_rgba(const std::filesystem::path& path) {
    RgbaImage image;
    read_png_pixels(path, 4, /*lenient=*/false, &image.width, &image.height, &image.pixels);
    return image;
}

void write_png_grey(const std::filesystem::path& path, const GreyImage& image) {
    write_png_pixels(path, image.width, image.height, 1, image.pixels);
}

void write_png_rgba(const std::filesystem::path& path, const RgbaImage& image) {
    write_png_pixels(path, image.width, image.height, 4, image.pixels);
}

BinaryMask read_mask_png(const std::filesystem::path& path) {
    GreyImage grey = read_png_grey(path);
    BinaryMask mask;
    mask.width = grey.width;
    mask.height = grey.height;
    mask.bits.resize(grey.pixels.size());
    for (size_t i = 0; i < grey.pixels.size(); ++i) {
        mask.bits[i] = grey.pixels[i] >= 128 ? 1 : 0;
    }
    return mask;
}

void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask) {
    GreyImage grey;
    grey.width = mask.width;
    grey.height = mask.height;
    grey.pixels.resize(mask.bits.size());
    for (size_t i = 0; i < mask.bits.size(); ++i) {
        grey.pixels[i] = mask.bits[i] ? 255 : 0;
    }
    write_png_grey(path, grey);
}

} // namespace grfkit::io
