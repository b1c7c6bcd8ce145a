#pragma once

#include <cstdint>
#include <utility>

#include "grfkit/metadata.hpp"
#include "grfkit/types.hpp"

namespace grfkit::grf {

/// Everything that determines one synthesized field. Two equal GrfParams
/// produce bit-identical fields within one build.
struct GrfParams {
    std::uint64_t seed = 0;
    int i = 2;        // integer spectral component, >= 1
    double f = 0.0;   // fractional spectral component, in [0, 1]
    int width = 640;
    int height = 480;
};

/// Throws RangeError (i, f out of range) or ShapeError (dimensions < 2).
void validate(const GrfParams& params);

/// Fixed per-category base seed.
std::uint64_t category_seed(meta::Category category);

/// Spectral power-law exponent: -(i + f).
double power_exponent(int i, double f);

/// Signed integer DFT frequency for index j on an axis of length n:
/// 0, 1, ..., ceil(n/2)-1, -floor(n/2), ..., -1.
int freq_index(int j, int n);

/// Broadcast per-axis frequencies to full grids (kx varies along x).
std::pair<Field2D, Field2D> frequency_grid(int width, int height);

/// Power-law spectral synthesis: seeded complex Gaussian noise, amplitude
/// shaping A(k) = (kx^2 + ky^2 + 1e-10)^(exponent/4), DC zeroed, inverse 2D
/// DFT with 1/(width*height) normalization, real part standardized to zero
/// mean and unit variance.
Field2D synthesize_field(const GrfParams& params);

/// Per-field min-max quantization to [0, 255], round half away from zero.
/// A constant field maps to all-128.
GreyImage field_to_greyscale(const Field2D& field);

/// Parameter derivation for one metadata record. Continuous categories take
/// f from the min-max normalized scalar and the category base seed; gender
/// takes f = 0 and offsets the base seed by the encoded value so the two
/// genders stay distinct.
GrfParams grf_params_for_record(meta::Category category, const meta::MetadataRecord& record,
                                const meta::NormalizationStats& norm, int i, int width,
                                int height);

GreyImage grf_for_record(meta::Category category, const meta::MetadataRecord& record,
                         const meta::NormalizationStats& norm, int i, int width, int height);

} // namespace grfkit::grf
