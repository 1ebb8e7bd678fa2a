#pragma once

#include "swr/spectral.hpp"
#include "swr/sweep.hpp"

#include <string>
#include <utility>
#include <vector>

namespace swr {

// Observed data for every FFT bin of `cube` whose frequency lies in
// [f_min, f_max]: each slice is embedded into the midpoint-offset domain and
// subsampled through the mask.
std::vector<ObservedData> observe_band(const FrequencyCube& cube, const SourceMask& mask,
                                       double f_min, double f_max);

// The matching embedded truth slices, aligned with observe_band's output.
std::vector<CMatrix> embed_band(const FrequencyCube& cube, double f_min, double f_max);

// Places each recovered slice (converted back to source-receiver coordinates)
// at its nearest FFT bin, zeros elsewhere, and transforms to time.
SeismicVolume band_to_volume(const RecoveredBand& band, const GridGeometry& geometry);

struct ModeReport {
    SweepConfig config;
    std::vector<std::pair<double, double>> slice_snr;  // (freq_hz, snr_db)
    double time_domain_snr_db = 0.0;
    // Non-empty when this config's sweep failed; other fields then cover the
    // slices recovered before the failure.
    std::string error;

    double mean_slice_snr(double from_hz, double to_hz) const;
};

struct CompareReport {
    std::vector<ModeReport> rows;
};

// Runs every config against the same truth/mask pair: subsamples the truth,
// sweeps, and records slice-level S/R plus the bandpassed time-domain S/R
// (passband [f_min, f_max] of each config, taper `transition_hz` outside).
CompareReport compare_modes(const SeismicVolume& truth, const SourceMask& mask,
                            const std::vector<SweepConfig>& configs,
                            double transition_hz = 3.66);

std::string to_table(const CompareReport& report);

}  // namespace swr
