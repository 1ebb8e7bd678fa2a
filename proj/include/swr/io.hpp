#pragma once

#include "swr/geometry.hpp"
#include "swr/sampling.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace swr {

// SWR1 volume container: magic "SWR1"; little-endian u32 n_t, u32 n_r,
// u32 n_s, f64 dt, f64 d_rcv, f64 d_src; float32 samples, time fastest, then
// receiver, then source. Read rejects wrong magic and truncated payloads.
void write_volume(const std::filesystem::path& path, const SeismicVolume& volume);
SeismicVolume read_volume(const std::filesystem::path& path);

// Mask text: first line "n_sources factor", then one kept index per line,
// ascending.
void write_mask(const std::filesystem::path& path, const SourceMask& mask);
SourceMask read_mask(const std::filesystem::path& path);

// CSV emitters: header row, '.' decimal, '\n' newlines, 6 significant digits.
void write_snr_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& rows);
void write_metric_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, double>>& rows);

// Locale-independent 6-significant-digit rendering used by the CSV emitters.
std::string format_value(double value);

}  // namespace swr
