#include "swr/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swr {

namespace {

std::vector<std::size_t> band_bins(const FrequencyCube& cube, double f_min, double f_max) {
    std::vector<std::size_t> bins;
    for (std::size_t k = 0; k < cube.bin_count(); ++k)
        if (cube.freq_axis[k] >= f_min && cube.freq_axis[k] <= f_max) bins.push_back(k);
    return bins;
}

const char* mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::Plain: return "plain";
        case SweepMode::ConventionalWeighted: return "weighted";
        case SweepMode::LimitedSubspace: return "limited";
    }
    return "?";
}

}  // namespace

std::vector<ObservedData> observe_band(const FrequencyCube& cube, const SourceMask& mask,
                                       double f_min, double f_max) {
    cube.validate();
    mask.validate();
    if (mask.n_sources != cube.geometry.n_sources)
        throw std::invalid_argument("observe_band: mask/geometry mismatch");

    std::vector<ObservedData> observed;
    for (std::size_t k : band_bins(cube, f_min, f_max)) {
        FrequencySlice slice{cube.freq_axis[k], SliceDomain::SourceReceiver, cube.slices[k]};
        observed.push_back(sample(embed_sr_to_mh(slice), mask));
    }
    return observed;
}

std::vector<CMatrix> embed_band(const FrequencyCube& cube, double f_min, double f_max) {
    cube.validate();
    std::vector<CMatrix> slices;
    for (std::size_t k : band_bins(cube, f_min, f_max)) {
        FrequencySlice slice{cube.freq_axis[k], SliceDomain::SourceReceiver, cube.slices[k]};
        slices.push_back(embed_sr_to_mh(slice).values);
    }
    return slices;
}

SeismicVolume band_to_volume(const RecoveredBand& band, const GridGeometry& geometry) {
    geometry.validate();
    if (!(band.geometry == geometry))
        throw std::invalid_argument("band_to_volume: geometry mismatch");

    const std::size_t bins = geometry.n_time / 2 + 1;
    FrequencyCube cube;
    cube.geometry = geometry;
    cube.freq_axis.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        cube.freq_axis[k] =
            static_cast<double>(k) / (static_cast<double>(geometry.n_time) * geometry.dt);
    cube.slices.assign(bins, CMatrix::Zero(geometry.n_sources, geometry.n_receivers));

    const double bin_width = 1.0 / (static_cast<double>(geometry.n_time) * geometry.dt);
    for (const RecoveredSlice& slice : band.slices) {
        if (slice.freq_hz < 0.0 || slice.freq_hz > geometry.nyquist_hz())
            throw std::invalid_argument("band_to_volume: frequency outside [0, Nyquist]");
        // Nearest-bin snapping.
        const auto bin = static_cast<std::size_t>(std::lround(slice.freq_hz / bin_width));
        if (bin >= bins) throw std::invalid_argument("band_to_volume: frequency beyond last bin");

        FrequencySlice mh;
        mh.freq_hz = slice.freq_hz;
        mh.domain = SliceDomain::MidpointOffset;
        mh.values = slice.factors.L * slice.factors.R.adjoint();
        cube.slices[bin] = extract_mh_to_sr(mh).values;
    }
    return inverse_time_fft(cube);
}

double ModeReport::mean_slice_snr(double from_hz, double to_hz) const {
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& [freq, snr] : slice_snr)
        if (freq >= from_hz && freq <= to_hz) {
            acc += snr;
            ++count;
        }
    if (count == 0) throw std::invalid_argument("mean_slice_snr: empty frequency window");
    return acc / static_cast<double>(count);
}

CompareReport compare_modes(const SeismicVolume& truth, const SourceMask& mask,
                            const std::vector<SweepConfig>& configs, double transition_hz) {
    if (configs.empty()) throw std::invalid_argument("compare_modes: no configs");
    truth.validate();
    const FrequencyCube cube = forward_time_fft(truth);

    CompareReport report;
    for (const SweepConfig& cfg : configs) {
        ModeReport row;
        row.config = cfg;
        const std::vector<ObservedData> observed =
            observe_band(cube, mask, cfg.f_min, cfg.f_max);
        const std::vector<CMatrix> truth_mh = embed_band(cube, cfg.f_min, cfg.f_max);

        RecoveredBand band;
        try {
            band = recover_band(truth.geometry, observed, cfg, &truth_mh);
        } catch (const SweepFailure& failure) {
            row.error = failure.what();
            band = failure.partial();
        }
        for (const RecoveredSlice& slice : band.slices)
            row.slice_snr.emplace_back(slice.freq_hz, slice.snr_db.value_or(0.0));

        if (row.error.empty()) {
            const SeismicVolume recovered = band_to_volume(band, truth.geometry);
            const BandpassSpec spec{cfg.f_min, cfg.f_max, transition_hz};
            row.time_domain_snr_db =
                snr_db(apply_bandpass(truth, spec), apply_bandpass(recovered, spec));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string to_table(const CompareReport& report) {
    std::ostringstream out;
    out << "mode      rank  r_s  w      band_hz        slices  mean_snr_db  time_snr_db\n";
    for (const ModeReport& row : report.rows) {
        const SweepConfig& cfg = row.config;
        char line[160];
        if (!row.error.empty()) {
            std::snprintf(line, sizeof(line), "%-9s %-5td %-4td %-6.3g %6.5g-%-7.5g FAILED: %s\n",
                          mode_name(cfg.mode), cfg.rank, cfg.subspace_rank, cfg.weight, cfg.f_min,
                          cfg.f_max, row.error.c_str());
            out << line;
            continue;
        }
        std::snprintf(line, sizeof(line),
                      "%-9s %-5td %-4td %-6.3g %6.5g-%-7.5g %-7zu %-12.4f %-12.4f\n",
                      mode_name(cfg.mode), cfg.rank, cfg.subspace_rank, cfg.weight, cfg.f_min,
                      cfg.f_max, row.slice_snr.size(), row.mean_slice_snr(cfg.f_min, cfg.f_max),
                      row.time_domain_snr_db);
        out << line;
    }
    return out.str();
}

}  // namespace swr
