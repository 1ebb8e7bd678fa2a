#pragma once

#include "swr/geometry.hpp"

namespace swr {

// Non-negative-frequency decomposition of a volume: bin k holds the n_s x n_r
// complex slice at k / (n_time * dt) Hz, k = 0 .. floor(n_time / 2).
struct FrequencyCube {
    GridGeometry geometry;
    std::vector<CMatrix> slices;
    std::vector<double> freq_axis;

    std::size_t bin_count() const { return slices.size(); }
    void validate() const;
};

// Raised-cosine tapered passband. The taper occupies [f_lo - transition, f_lo]
// and [f_hi, f_hi + transition], outside the stated passband.
struct BandpassSpec {
    double f_lo = 7.0;
    double f_hi = 74.0;
    double transition = 3.66;

    void validate() const;
};

// Per-trace DFT along time keeping non-negative bins; unnormalized forward,
// so inverse_time_fft(forward_time_fft(v)) == v.
FrequencyCube forward_time_fft(const SeismicVolume& volume);

// Conjugate-symmetric extension and inverse transform; the imaginary residue
// is checked and discarded.
SeismicVolume inverse_time_fft(const FrequencyCube& cube);

// Gain in [0, 1]: 0 outside [f_lo - t, f_hi + t], 1 on [f_lo, f_hi],
// raised-cosine ramps in between.
double bandpass_response(double freq_hz, const BandpassSpec& spec);

SeismicVolume apply_bandpass(const SeismicVolume& volume, const BandpassSpec& spec);

// Signal-to-residual ratio 20 log10(|truth| / |truth - test|), capped at
// +300 dB for an exactly zero residual. Zero truth is rejected.
double snr_db(const SeismicVolume& truth, const SeismicVolume& test);
double snr_db(const CMatrix& truth, const CMatrix& test);

}  // namespace swr
