#pragma once

#include "swr/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace swr {

// One hyperbolic reflection event: arrival sqrt(t0^2 + (offset/velocity)^2).
struct EventSpec {
    double t0 = 0.0;        // zero-offset two-way time, s
    double velocity = 0.0;  // moveout velocity, m/s
    double amplitude = 1.0;

    void validate() const;
};

struct SynthConfig {
    GridGeometry geometry;
    std::vector<EventSpec> events;
    double peak_freq_hz = 20.0;
    std::uint64_t seed = 0;
    // Additive white noise scaled to this S/R; omit for a noiseless line.
    std::optional<double> noise_snr_db;

    void validate() const;
};

// Ricker wavelet (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2); unit peak at t = 0.
double ricker(double t, double f_peak);

// Hyperbolic-event shot volume: every trace is a superposition of Ricker
// arrivals with offset-dependent moveout. Deterministic given the seed.
SeismicVolume generate(const SynthConfig& cfg);

// `count` events spread over [0.15, 0.7] of the time axis with increasing
// moveout velocity.
std::vector<EventSpec> default_events(std::size_t count, double t_end);

// Desk-scale default: 64 x 64 line, 512 samples at 4 ms, four events, 20 Hz.
SynthConfig default_synth_config();

}  // namespace swr
