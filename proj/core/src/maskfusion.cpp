#include "grfkit/maskfusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "grfkit/errors.hpp"

namespace grfkit::mask {
namespace {

void check_mask(const BinaryMask& mask) {
    if (mask.width < 1 || mask.height < 1) {
        throw ShapeError("mask has empty dimensions");
    }
    if (mask.bits.size() != static_cast<size_t>(mask.width) * static_cast<size_t>(mask.height)) {
        throw ShapeError("mask bit buffer does not match its dimensions");
    }
}

// d(x) = min_q (x - q)^2 + f(q), exact over int64 inputs. The parabola
// crossings are compared in double, which cannot perturb the integer result:
// two envelope parabolas that could swap near an integer abscissa agree
// there exactly (their gap at integers is a multiple of 1).
void dt_1d(const std::vector<std::int64_t>& f, int n, std::vector<std::int64_t>& d,
           std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s = 0.0;
        for (;;) {
            const int p = v[k];
            s = static_cast<double>(f[q] + static_cast<std::int64_t>(q) * q - f[p]
                                    - static_cast<std::int64_t>(p) * p)
                / (2.0 * static_cast<double>(q - p));
            if (s <= z[k] && k > 0) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int x = 0; x < n; ++x) {
        while (z[k + 1] < static_cast<double>(x)) ++k;
        const std::int64_t dx = x - v[k];
        d[x] = dx * dx + f[v[k]];
    }
}

// a = m^2 * q with q squarefree; used to detect exact cancellation of
// signed-distance sums (sqrt of distinct squarefree integers are linearly
// independent over the rationals).
std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t a) {
    std::int64_t m = 1;
    std::int64_t q = 1;
    for (std::int64_t p = 2; p * p <= a; ++p) {
        if (a % p != 0) continue;
        int e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        for (int half = 0; half < e / 2; ++half) m *= p;
        if (e % 2 == 1) q *= p;
    }
    q *= a; // leftover prime
    return {m, q};
}

} // namespace

const char* to_string(MergeMode mode) {
    return mode == MergeMode::sdf_mean ? "sdf_mean" : "pixel_mean";
}

MergeMode merge_mode_from_string(const std::string& name) {
    if (name == "sdf_mean") return MergeMode::sdf_mean;
    if (name == "pixel_mean") return MergeMode::pixel_mean;
    throw RangeError("unknown merge mode '" + name + "' (expected sdf_mean or pixel_mean)");
}

BinaryMask complement(const BinaryMask& mask) {
    check_mask(mask);
    BinaryMask out = mask;
    for (auto& bit : out.bits) bit = bit ? 0 : 1;
    return out;
}

std::vector<std::int64_t> squared_distance_transform(const BinaryMask& mask) {
    check_mask(mask);
    const int w = mask.width;
    const int h = mask.height;
    const std::int64_t clamp = static_cast<std::int64_t>(w) + h;
    const bool any_fg = std::any_of(mask.bits.begin(), mask.bits.end(),
                                    [](std::uint8_t b) { return b != 0; });
    if (!any_fg) {
        return std::vector<std::int64_t>(mask.bits.size(), clamp * clamp);
    }

    // Sentinel larger than any attainable squared distance; bounded so that
    // the double-precision crossing arithmetic in dt_1d stays exact.
    const std::int64_t far = 4 * clamp * clamp + 1;
    const int longest = std::max(w, h);
    std::vector<std::int64_t> grid(mask.bits.size());
    std::vector<std::int64_t> f(static_cast<size_t>(longest));
    std::vector<std::int64_t> d(static_cast<size_t>(longest));
    std::vector<int> v(static_cast<size_t>(longest));
    std::vector<double> z(static_cast<size_t>(longest) + 1);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            f[static_cast<size_t>(x)] = mask.bits[static_cast<size_t>(y) * w + x] ? 0 : far;
        }
        dt_1d(f, w, d, v, z);
        for (int x = 0; x < w; ++x) grid[static_cast<size_t>(y) * w + x] = d[static_cast<size_t>(x)];
    }
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[static_cast<size_t>(y)] = grid[static_cast<size_t>(y) * w + x];
        dt_1d(f, h, d, v, z);
        for (int y = 0; y < h; ++y) grid[static_cast<size_t>(y) * w + x] = d[static_cast<size_t>(y)];
    }
    return grid;
}

DistanceMap distance_transform(const BinaryMask& mask) {
    const std::vector<std::int64_t> sq = squared_distance_transform(mask);
    DistanceMap map;
    map.width = mask.width;
    map.height = mask.height;
    map.values.resize(sq.size());
    for (size_t i = 0; i < sq.size(); ++i) {
        map.values[i] = std::sqrt(static_cast<double>(sq[i]));
    }
    return map;
}

SignedDistanceMap signed_distance(const BinaryMask& mask) {
    check_mask(mask);
    SignedDistanceMap map;
    map.width = mask.width;
    map.height = mask.height;
    map.values.resize(mask.bits.size());
    const double clamp = static_cast<double>(mask.width) + mask.height;
    const bool any_fg = std::any_of(mask.bits.begin(), mask.bits.end(),
                                    [](std::uint8_t b) { return b != 0; });
    const bool any_bg = std::any_of(mask.bits.begin(), mask.bits.end(),
                                    [](std::uint8_t b) { return b == 0; });
    if (!any_fg || !any_bg) {
        std::fill(map.values.begin(), map.values.end(), any_fg ? clamp : -clamp);
        return map;
    }
    const std::vector<std::int64_t> to_fg = squared_distance_transform(mask);
    const std::vector<std::int64_t> to_bg = squared_distance_transform(complement(mask));
    for (size_t i = 0; i < mask.bits.size(); ++i) {
        map.values[i] = mask.bits[i] ? std::sqrt(static_cast<double>(to_bg[i]))
                                     : -std::sqrt(static_cast<double>(to_fg[i]));
    }
    return map;
}

BinaryMask average_merge(const std::vector<BinaryMask>& masks, MergeMode mode) {
    if (masks.empty()) throw DataError("cannot merge an empty mask ensemble");
    for (const BinaryMask& m : masks) check_mask(m);
    const int w = masks.front().width;
    const int h = masks.front().height;
    for (const BinaryMask& m : masks) {
        if (m.width != w || m.height != h) {
            throw ShapeError("ensemble masks disagree in size: " + std::to_string(w) + "x"
                             + std::to_string(h) + " vs " + std::to_string(m.width) + "x"
                             + std::to_string(m.height));
        }
    }
    const size_t n = static_cast<size_t>(w) * static_cast<size_t>(h);
    const size_t k = masks.size();
    BinaryMask out;
    out.width = w;
    out.height = h;
    out.bits.assign(n, 0);

    if (mode == MergeMode::pixel_mean) {
        for (size_t i = 0; i < n; ++i) {
            std::int64_t votes = 0;
            for (const BinaryMask& m : masks) votes += m.bits[i];
            out.bits[i] = 2 * votes >= static_cast<std::int64_t>(k) ? 1 : 0;
        }
        return out;
    }

    // sdf_mean. Per mask, signed squared distances: +to_bg on foreground,
    // -to_fg on background (uniform masks use the (w+h)^2 clamp).
    struct SignedSq {
        std::vector<std::int64_t> sq; // magnitude^2
        const std::uint8_t* bits;     // sign source
        bool uniform_fg = false;
        bool uniform_bg = false;
    };
    const std::int64_t clamp_sq =
        (static_cast<std::int64_t>(w) + h) * (static_cast<std::int64_t>(w) + h);
    std::vector<SignedSq> layers(k);
    std::vector<std::vector<std::int64_t>> to_bg_store(k);
    for (size_t j = 0; j < k; ++j) {
        const BinaryMask& m = masks[j];
        layers[j].bits = m.bits.data();
        const bool any_fg = std::any_of(m.bits.begin(), m.bits.end(),
                                        [](std::uint8_t b) { return b != 0; });
        const bool any_bg = std::any_of(m.bits.begin(), m.bits.end(),
                                        [](std::uint8_t b) { return b == 0; });
        if (!any_bg) {
            layers[j].uniform_fg = true;
            continue;
        }
        if (!any_fg) {
            layers[j].uniform_bg = true;
            continue;
        }
        layers[j].sq = squared_distance_transform(m);           // distance to foreground
        to_bg_store[j] = squared_distance_transform(complement(m)); // distance to background
    }

    std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>> split_cache;
    auto split = [&](std::int64_t a) {
        auto it = split_cache.find(a);
        if (it == split_cache.end()) {
            it = split_cache.emplace(a, squarefree_split(a)).first;
        }
        return it->second;
    };

    std::vector<std::pair<std::int64_t, std::int64_t>> coeffs; // (squarefree q, summed m)
    std::vector<double> addends;
    for (size_t i = 0; i < n; ++i) {
        coeffs.clear();
        addends.clear();
        for (size_t j = 0; j < k; ++j) {
            const SignedSq& layer = layers[j];
            std::int64_t sq;
            int sign;
            if (layer.uniform_fg) {
                sq = clamp_sq;
                sign = 1;
            } else if (layer.uniform_bg) {
                sq = clamp_sq;
                sign = -1;
            } else if (layer.bits[i]) {
                sq = to_bg_store[j][i];
                sign = 1;
            } else {
                sq = layer.sq[i];
                sign = -1;
            }
            const auto [root, free] = split(sq);
            bool merged = false;
            for (auto& [q, c] : coeffs) {
                if (q == free) {
                    c += sign * root;
                    merged = true;
                    break;
                }
            }
            if (!merged) coeffs.emplace_back(free, sign * root);
            addends.push_back(sign * std::sqrt(static_cast<double>(sq)));
        }
        const bool exact_zero = std::all_of(coeffs.begin(), coeffs.end(),
                                            [](const auto& qc) { return qc.second == 0; });
        if (exact_zero) {
            out.bits[i] = 1; // mean exactly zero: ties go to foreground
            continue;
        }
        // Canonical (sorted) summation order keeps the decision independent
        // of ensemble ordering.
        std::sort(addends.begin(), addends.end());
        double sum = 0.0;
        for (double a : addends) sum += a;
        out.bits[i] = sum >= 0.0 ? 1 : 0;
    }
    return out;
}

} // namespace grfkit::mask
