#pragma once

#include <vector>

#include "grfkit/types.hpp"

namespace grfkit::grf {

struct SpectrumBin {
    double k = 0.0;     // mean radial frequency of the contributing components
    double power = 0.0; // mean squared DFT magnitude over the annulus
};

struct RadialSpectrum {
    std::vector<SpectrumBin> bins; // k strictly increasing, empty annuli dropped
};

/// Forward 2D DFT of the field; squared magnitudes averaged over `bin_count`
/// equal-width annuli of radial frequency sqrt(kx^2 + ky^2) up to
/// hypot(floor(w/2), floor(h/2)). The DC component is excluded.
RadialSpectrum radial_power_spectrum(const Field2D& field, int bin_count);

/// Ordinary least-squares slope of log(power) against log(k) over bins with
/// k_min <= k <= k_max. Throws DataError when fewer than two bins qualify.
double fit_loglog_slope(const RadialSpectrum& spectrum, double k_min, double k_max);

} // namespace grfkit::grf
