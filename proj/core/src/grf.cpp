#include "grfkit/grf.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "grfkit/errors.hpp"
#include "grfkit/rng.hpp"
#include "fft_guard.hpp"

namespace grfkit::detail {

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

} // namespace grfkit::detail

namespace grfkit::grf {

void validate(const GrfParams& params) {
    if (params.i < 1) {
        throw RangeError("spectral component i must be >= 1, got " + std::to_string(params.i));
    }
    if (!(params.f >= 0.0 && params.f <= 1.0)) {
        throw RangeError("spectral component f must lie in [0, 1], got "
                         + std::to_string(params.f));
    }
    if (params.width < 2 || params.height < 2) {
        throw ShapeError("field dimensions must be at least 2x2, got "
                         + std::to_string(params.width) + "x" + std::to_string(params.height));
    }
}

std::uint64_t category_seed(meta::Category category) {
    switch (category) {
    case meta::Category::dob: return 76539635u;
    case meta::Category::gender: return 88118546u;
    case meta::Category::hdd: return 41094303u;
    }
    throw RangeError("unknown category");
}

double power_exponent(int i, double f) {
    return -(static_cast<double>(i) + f);
}

int freq_index(int j, int n) {
    return j < (n + 1) / 2 ? j : j - n;
}

std::pair<Field2D, Field2D> frequency_grid(int width, int height) {
    if (width < 2 || height < 2) {
        throw ShapeError("frequency grid needs dimensions of at least 2");
    }
    Field2D kx{width, height, std::vector<double>(static_cast<size_t>(width) * height)};
    Field2D ky = kx;
    for (int y = 0; y < height; ++y) {
        const double fy = freq_index(y, height);
        for (int x = 0; x < width; ++x) {
            const size_t idx = static_cast<size_t>(y) * width + x;
            kx.values[idx] = freq_index(x, width);
            ky.values[idx] = fy;
        }
    }
    return {std::move(kx), std::move(ky)};
}

Field2D synthesize_field(const GrfParams& params) {
    validate(params);
    const int w = params.width;
    const int h = params.height;
    const size_t n = static_cast<size_t>(w) * static_cast<size_t>(h);
    const double exponent = power_exponent(params.i, params.f);

    std::vector<std::complex<double>> spectrum(n);
    std::vector<std::complex<double>> image(n);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        plan = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(spectrum.data()),
                                reinterpret_cast<fftw_complex*>(image.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    if (!plan) throw Error("FFTW refused to plan a " + std::to_string(w) + "x"
                           + std::to_string(h) + " transform");

    Pcg32 rng(params.seed);
    for (size_t idx = 0; idx < n; ++idx) {
        const auto [re, im] = gaussian_pair(rng);
        spectrum[idx] = {re, im};
    }
    for (int y = 0; y < h; ++y) {
        const double ky = freq_index(y, h);
        for (int x = 0; x < w; ++x) {
            const double kx = freq_index(x, w);
            const double amp = std::pow(kx * kx + ky * ky + 1e-10, exponent / 4.0);
            spectrum[static_cast<size_t>(y) * w + x] *= amp;
        }
    }
    spectrum[0] = 0.0; // DC carries no information; keep the field zero-mean

    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }

    Field2D field{w, h, std::vector<double>(n)};
    const double scale = 1.0 / (static_cast<double>(w) * static_cast<double>(h));
    for (size_t idx = 0; idx < n; ++idx) {
        field.values[idx] = image[idx].real() * scale;
    }

    double mean = 0.0;
    for (double v : field.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : field.values) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (sd > 0.0) {
        for (double& v : field.values) v = (v - mean) / sd;
    } else {
        for (double& v : field.values) v = 0.0;
    }
    return field;
}

GreyImage field_to_greyscale(const Field2D& field) {
    if (field.values.empty()) throw ShapeError("cannot quantize an empty field");
    double lo = field.values[0];
    double hi = field.values[0];
    for (double v : field.values) {
        if (!std::isfinite(v)) throw DataError("field contains a non-finite value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    GreyImage image;
    image.width = field.width;
    image.height = field.height;
    image.pixels.resize(field.values.size());
    if (hi == lo) {
        std::fill(image.pixels.begin(), image.pixels.end(), std::uint8_t{128});
        return image;
    }
    const double span = hi - lo;
    for (size_t idx = 0; idx < field.values.size(); ++idx) {
        const long q = std::lround(255.0 * (field.values[idx] - lo) / span);
        image.pixels[idx] = static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
    }
    return image;
}

GrfParams grf_params_for_record(meta::Category category, const meta::MetadataRecord& record,
                                const meta::NormalizationStats& norm, int i, int width,
                                int height) {
    GrfParams params;
    params.i = i;
    params.width = width;
    params.height = height;
    switch (category) {
    case meta::Category::dob:
        params.f = meta::minmax_apply(norm, static_cast<double>(meta::dob_to_scalar(record.dob)),
                                      meta::Category::dob)
                       .value;
        params.seed = category_seed(category);
        break;
    case meta::Category::gender:
        params.f = 0.0;
        params.seed = category_seed(category)
                      + static_cast<std::uint64_t>(meta::encode_gender(record.gender).value);
        break;
    case meta::Category::hdd:
        if (!record.hdd) {
            throw DataError("record " + record.image_id
                            + " carries no health and disability decile value");
        }
        params.f = meta::minmax_apply(norm, static_cast<double>(*record.hdd), meta::Category::hdd)
                       .value;
        params.seed = category_seed(category);
        break;
    }
    return params;
}

GreyImage grf_for_record(meta::Category category, const meta::MetadataRecord& record,
                         const meta::NormalizationStats& norm, int i, int width, int height) {
    return field_to_greyscale(
        synthesize_field(grf_params_for_record(category, record, norm, i, width, height)));
}

} // namespace grfkit::grf
