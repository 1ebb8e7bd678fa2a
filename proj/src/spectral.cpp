#include "swr/spectral.hpp"

#include "swr/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace swr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSnrCapDb = 300.0;

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

double snr_impl(double truth_norm, double residual_norm) {
    if (!(truth_norm > 0.0)) throw std::invalid_argument("snr_db: zero truth signal");
    if (residual_norm == 0.0) return kSnrCapDb;
    return 20.0 * std::log10(truth_norm / residual_norm);
}

}  // namespace

void FrequencyCube::validate() const {
    geometry.validate();
    const std::size_t bins = geometry.n_time / 2 + 1;
    if (slices.size() != bins || freq_axis.size() != bins)
        throw std::invalid_argument("frequency cube: bin count inconsistent with geometry");
    for (const CMatrix& s : slices)
        if (s.rows() != static_cast<Eigen::Index>(geometry.n_sources) ||
            s.cols() != static_cast<Eigen::Index>(geometry.n_receivers))
            throw std::invalid_argument("frequency cube: slice shape mismatch");
}

void BandpassSpec::validate() const {
    if (!(f_lo < f_hi)) throw std::invalid_argument("bandpass: f_lo must be below f_hi");
    if (transition < 0.0) throw std::invalid_argument("bandpass: transition must be >= 0");
    if (f_lo - transition < 0.0)
        throw std::invalid_argument("bandpass: taper extends below zero frequency");
}

FrequencyCube forward_time_fft(const SeismicVolume& volume) {
    const GridGeometry& g = volume.geometry;
    g.validate();
    const std::size_t nt = g.n_time;
    const std::size_t bins = nt / 2 + 1;

    FrequencyCube cube;
    cube.geometry = g;
    cube.freq_axis.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        cube.freq_axis[k] = static_cast<double>(k) / (static_cast<double>(nt) * g.dt);
    cube.slices.assign(bins, CMatrix::Zero(g.n_sources, g.n_receivers));

    auto in = fftw_buffer<double>(nt);
    auto out = fftw_buffer<fftw_complex>(bins);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(nt), in.get(), out.get(),
                                          FFTW_ESTIMATE);

    for (std::size_t s = 0; s < g.n_sources; ++s)
        for (std::size_t r = 0; r < g.n_receivers; ++r) {
            for (std::size_t t = 0; t < nt; ++t) in[t] = volume.at(s, r, t);
            fftw_execute(plan);
            for (std::size_t k = 0; k < bins; ++k)
                cube.slices[k](static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
                    Complex(out[k][0], out[k][1]);
        }
    fftw_destroy_plan(plan);
    return cube;
}

SeismicVolume inverse_time_fft(const FrequencyCube& cube) {
    cube.validate();
    const GridGeometry& g = cube.geometry;
    const std::size_t nt = g.n_time;
    const std::size_t bins = nt / 2 + 1;

    auto in = fftw_buffer<fftw_complex>(nt);
    auto out = fftw_buffer<fftw_complex>(nt);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(nt), in.get(), out.get(), FFTW_BACKWARD,
                                      FFTW_ESTIMATE);

    SeismicVolume volume(g);
    double imag_sq = 0.0;
    double total_sq = 0.0;
    for (std::size_t s = 0; s < g.n_sources; ++s)
        for (std::size_t r = 0; r < g.n_receivers; ++r) {
            for (std::size_t k = 0; k < bins; ++k) {
                const Complex v = cube.slices[k](static_cast<Eigen::Index>(s),
                                                 static_cast<Eigen::Index>(r));
                in[k][0] = v.real();
                in[k][1] = v.imag();
            }
            // Conjugate-symmetric extension of the negative bins.
            for (std::size_t k = bins; k < nt; ++k) {
                const std::size_t mirror = nt - k;
                in[k][0] = in[mirror][0];
                in[k][1] = -in[mirror][1];
            }
            fftw_execute(plan);
            for (std::size_t t = 0; t < nt; ++t) {
                const double re = out[t][0] / static_cast<double>(nt);
                const double im = out[t][1] / static_cast<double>(nt);
                volume.at(s, r, t) = re;
                imag_sq += im * im;
                total_sq += re * re + im * im;
            }
        }
    fftw_destroy_plan(plan);

    if (total_sq > 0.0 && std::sqrt(imag_sq) > 1e-8 * std::sqrt(total_sq))
        throw NumericError("inverse_time_fft: spectrum is not conjugate-consistent");
    return volume;
}

double bandpass_response(double freq_hz, const BandpassSpec& spec) {
    spec.validate();
    if (freq_hz < 0.0) throw std::invalid_argument("bandpass_response: negative frequency");
    const double t = spec.transition;
    if (freq_hz >= spec.f_lo && freq_hz <= spec.f_hi) return 1.0;
    if (freq_hz <= spec.f_lo - t || freq_hz >= spec.f_hi + t) return 0.0;
    if (freq_hz < spec.f_lo)
        return 0.5 * (1.0 - std::cos(kPi * (freq_hz - (spec.f_lo - t)) / t));
    return 0.5 * (1.0 - std::cos(kPi * ((spec.f_hi + t) - freq_hz) / t));
}

SeismicVolume apply_bandpass(const SeismicVolume& volume, const BandpassSpec& spec) {
    spec.validate();
    FrequencyCube cube = forward_time_fft(volume);
    for (std::size_t k = 0; k < cube.bin_count(); ++k)
        cube.slices[k] *= bandpass_response(cube.freq_axis[k], spec);
    return inverse_time_fft(cube);
}

double snr_db(const SeismicVolume& truth, const SeismicVolume& test) {
    if (!(truth.geometry == test.geometry))
        throw std::invalid_argument("snr_db: geometry mismatch");
    double residual_sq = 0.0;
    for (std::size_t i = 0; i < truth.samples.size(); ++i) {
        const double d = truth.samples[i] - test.samples[i];
        residual_sq += d * d;
    }
    return snr_impl(truth.norm(), std::sqrt(residual_sq));
}

double snr_db(const CMatrix& truth, const CMatrix& test) {
    if (truth.rows() != test.rows() || truth.cols() != test.cols())
        throw std::invalid_argument("snr_db: shape mismatch");
    return snr_impl(truth.norm(), (truth - test).norm());
}

}  // namespace swr
