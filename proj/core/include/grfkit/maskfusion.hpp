#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grfkit/types.hpp"

namespace grfkit::mask {

enum class MergeMode { sdf_mean, pixel_mean };

const char* to_string(MergeMode mode);
MergeMode merge_mode_from_string(const std::string& name);

BinaryMask complement(const BinaryMask& mask);

/// Exact squared Euclidean distance to the nearest foreground pixel, per
/// pixel, as integers (two-pass lower-envelope algorithm; no chamfer
/// approximation). An empty foreground yields (width+height)^2 everywhere.
std::vector<std::int64_t> squared_distance_transform(const BinaryMask& mask);

/// Euclidean distances (square roots of the exact squared transform).
DistanceMap distance_transform(const BinaryMask& mask);

/// Positive inside the foreground (distance to nearest background pixel),
/// negative outside (distance to nearest foreground pixel). Uniform masks
/// short-circuit to +-(width+height).
SignedDistanceMap signed_distance(const BinaryMask& mask);

/// Ensemble fusion. sdf_mean averages the signed distance maps pointwise and
/// thresholds at mean >= 0; pixel_mean averages the {0,1} bits and thresholds
/// at mean >= 0.5. Both are permutation-invariant and idempotent.
BinaryMask average_merge(const std::vector<BinaryMask>& masks, MergeMode mode);

} // namespace grfkit::mask
