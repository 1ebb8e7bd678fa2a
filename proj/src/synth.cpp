#include "swr/synth.hpp"

#include "swr/random.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace swr {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void EventSpec::validate() const {
    if (!(t0 > 0.0)) throw std::invalid_argument("event: t0 must be positive");
    if (!(velocity > 0.0)) throw std::invalid_argument("event: velocity must be positive");
}

void SynthConfig::validate() const {
    geometry.validate();
    if (events.empty()) throw std::invalid_argument("synth: at least one event required");
    for (const EventSpec& e : events) e.validate();
    if (!(peak_freq_hz > 0.0) || peak_freq_hz >= geometry.nyquist_hz())
        throw std::invalid_argument("synth: peak frequency must lie below Nyquist");
}

double ricker(double t, double f_peak) {
    const double arg = kPi * kPi * f_peak * f_peak * t * t;
    return (1.0 - 2.0 * arg) * std::exp(-arg);
}

SeismicVolume generate(const SynthConfig& cfg) {
    cfg.validate();
    const GridGeometry& g = cfg.geometry;
    const double t_end = static_cast<double>(g.n_time - 1) * g.dt;
    // Beyond this lag the wavelet is far below double round-off of the sums.
    const double support = 8.0 / (kPi * cfg.peak_freq_hz);

    SeismicVolume volume(g);
    for (const EventSpec& event : cfg.events) {
        double min_offset = std::numeric_limits<double>::max();
        for (std::size_t s = 0; s < g.n_sources; ++s)
            for (std::size_t r = 0; r < g.n_receivers; ++r)
                min_offset = std::min(min_offset,
                                      std::abs(static_cast<double>(s) * g.d_src -
                                               static_cast<double>(r) * g.d_rcv));
        const double earliest =
            std::hypot(event.t0, min_offset / event.velocity);
        if (earliest > t_end) {
            std::cerr << "swr: event at t0=" << event.t0
                      << " s arrives beyond the time axis for all offsets; skipped\n";
            continue;
        }

        for (std::size_t s = 0; s < g.n_sources; ++s)
            for (std::size_t r = 0; r < g.n_receivers; ++r) {
                const double offset = static_cast<double>(s) * g.d_src -
                                      static_cast<double>(r) * g.d_rcv;
                const double arrival = std::hypot(event.t0, offset / event.velocity);
                const auto t_first = static_cast<std::size_t>(
                    std::max(0.0, std::ceil((arrival - support) / g.dt)));
                const auto t_last = static_cast<std::size_t>(
                    std::max(0.0, std::floor((arrival + support) / g.dt)));
                for (std::size_t t = t_first; t <= t_last && t < g.n_time; ++t)
                    volume.at(s, r, t) +=
                        event.amplitude * ricker(static_cast<double>(t) * g.dt - arrival,
                                                 cfg.peak_freq_hz);
            }
    }

    if (cfg.noise_snr_db) {
        Rng rng(cfg.seed);
        std::vector<double> noise(volume.samples.size());
        double noise_sq = 0.0;
        for (double& v : noise) {
            v = rng.gaussian();
            noise_sq += v * v;
        }
        const double clean_norm = volume.norm();
        if (noise_sq > 0.0 && clean_norm > 0.0) {
            const double target = clean_norm * std::pow(10.0, -*cfg.noise_snr_db / 20.0);
            const double scale = target / std::sqrt(noise_sq);
            for (std::size_t i = 0; i < noise.size(); ++i)
                volume.samples[i] += scale * noise[i];
        }
    }
    return volume;
}

std::vector<EventSpec> default_events(std::size_t count, double t_end) {
    if (count == 0) throw std::invalid_argument("default_events: count must be positive");
    const double amplitudes[4] = {1.0, 0.8, 0.9, 0.7};
    std::vector<EventSpec> events;
    for (std::size_t k = 0; k < count; ++k) {
        const double frac =
            count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        EventSpec event;
        event.t0 = (0.15 + 0.55 * frac) * t_end;
        event.velocity = 1500.0 + 1100.0 * frac;
        event.amplitude = amplitudes[k % 4];
        events.push_back(event);
    }
    return events;
}

SynthConfig default_synth_config() {
    SynthConfig cfg;
    cfg.geometry = {64, 64, 512, 0.004, 25.0, 25.0};
    cfg.events = default_events(4, static_cast<double>(cfg.geometry.n_time - 1) * cfg.geometry.dt);
    cfg.peak_freq_hz = 20.0;
    return cfg;
}

}  // namespace swr
