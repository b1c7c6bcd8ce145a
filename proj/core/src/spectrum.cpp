#include "grfkit/spectrum.hpp"

#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "grfkit/errors.hpp"
#include "grfkit/grf.hpp"
#include "fft_guard.hpp"

namespace grfkit::grf {

RadialSpectrum radial_power_spectrum(const Field2D& field, int bin_count) {
    if (bin_count < 4) {
        throw RangeError("spectrum needs at least 4 bins, got " + std::to_string(bin_count));
    }
    const int w = field.width;
    const int h = field.height;
    const size_t n = static_cast<size_t>(w) * static_cast<size_t>(h);
    if (w < 2 || h < 2 || field.values.size() != n) {
        throw ShapeError("malformed field passed to radial_power_spectrum");
    }

    std::vector<std::complex<double>> input(n);
    std::vector<std::complex<double>> output(n);
    for (size_t idx = 0; idx < n; ++idx) input[idx] = {field.values[idx], 0.0};

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        plan = fftw_plan_dft_2d(h, w, reinterpret_cast<fftw_complex*>(input.data()),
                                reinterpret_cast<fftw_complex*>(output.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    if (!plan) throw Error("FFTW refused to plan a " + std::to_string(w) + "x"
                           + std::to_string(h) + " transform");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }

    const double k_max = std::hypot(static_cast<double>(w / 2), static_cast<double>(h / 2));
    const double bin_width = k_max / static_cast<double>(bin_count);
    std::vector<double> power_sum(static_cast<size_t>(bin_count), 0.0);
    std::vector<double> k_sum(static_cast<size_t>(bin_count), 0.0);
    std::vector<std::int64_t> counts(static_cast<size_t>(bin_count), 0);

    for (int y = 0; y < h; ++y) {
        const double ky = freq_index(y, h);
        for (int x = 0; x < w; ++x) {
            if (x == 0 && y == 0) continue; // DC excluded
            const double kx = freq_index(x, w);
            const double k = std::hypot(kx, ky);
            auto bin = static_cast<size_t>(std::min(
                static_cast<double>(bin_count - 1), std::floor(k / bin_width)));
            const std::complex<double>& c = output[static_cast<size_t>(y) * w + x];
            power_sum[bin] += std::norm(c);
            k_sum[bin] += k;
            counts[bin] += 1;
        }
    }

    RadialSpectrum spectrum;
    for (size_t b = 0; b < power_sum.size(); ++b) {
        if (counts[b] == 0) continue;
        const double cnt = static_cast<double>(counts[b]);
        spectrum.bins.push_back({k_sum[b] / cnt, power_sum[b] / cnt});
    }
    return spectrum;
}

double fit_loglog_slope(const RadialSpectrum& spectrum, double k_min, double k_max) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t m = 0;
    for (const SpectrumBin& bin : spectrum.bins) {
        if (bin.k < k_min || bin.k > k_max || !(bin.power > 0.0)) continue;
        const double lx = std::log(bin.k);
        const double ly = std::log(bin.power);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw DataError("log-log fit needs at least two spectrum bins in range");
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    if (denom == 0.0) throw DataError("degenerate abscissa in log-log fit");
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

} // namespace grfkit::grf
