#include "swr/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swr {

void GridGeometry::validate() const {
    if (n_sources == 0 || n_receivers == 0)
        throw std::invalid_argument("geometry: source/receiver counts must be positive");
    if (n_sources != n_receivers)
        throw std::invalid_argument("geometry: grid must be square (n_sources == n_receivers)");
    if (n_time < 2) throw std::invalid_argument("geometry: n_time must be >= 2");
    if (!(dt > 0.0)) throw std::invalid_argument("geometry: dt must be positive");
    if (!(d_src > 0.0) || !(d_rcv > 0.0))
        throw std::invalid_argument("geometry: spacings must be positive");
}

bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.n_sources == b.n_sources && a.n_receivers == b.n_receivers &&
           a.n_time == b.n_time && a.dt == b.dt && a.d_src == b.d_src && a.d_rcv == b.d_rcv;
}

void SeismicVolume::validate() const {
    geometry.validate();
    if (samples.size() != geometry.trace_count() * geometry.n_time)
        throw std::invalid_argument("volume: sample count does not match geometry");
    for (double v : samples)
        if (!std::isfinite(v)) throw std::invalid_argument("volume: non-finite sample");
}

double SeismicVolume::norm() const {
    double acc = 0.0;
    for (double v : samples) acc += v * v;
    return std::sqrt(acc);
}

MhIndex sr_to_mh(std::size_t s, std::size_t r, std::size_t n) {
    if (s >= n || r >= n)
        throw std::invalid_argument("sr_to_mh: index out of range (s=" + std::to_string(s) +
                                    ", r=" + std::to_string(r) + ", n=" + std::to_string(n) + ")");
    return {s + r, s + (n - 1) - r};
}

std::optional<SrIndex> mh_to_sr(std::size_t m, std::size_t h, std::size_t n) {
    if (m > 2 * n - 2 || h > 2 * n - 2)
        throw std::invalid_argument("mh_to_sr: index out of range");
    // s = (m + h - (n-1)) / 2, r = (m - h + (n-1)) / 2, both in [0, n)
    const std::size_t sum = m + h;         // 2s + n - 1
    const std::size_t diff = m + n - 1;    // 2r + h
    if (sum < n - 1 || (sum - (n - 1)) % 2 != 0) return std::nullopt;
    const std::size_t s = (sum - (n - 1)) / 2;
    if (s >= n) return std::nullopt;
    if (diff < h || (diff - h) % 2 != 0) return std::nullopt;
    const std::size_t r = (diff - h) / 2;
    if (r >= n) return std::nullopt;
    return SrIndex{s, r};
}

bool mh_cell_valid(std::size_t m, std::size_t h, std::size_t n) {
    return mh_to_sr(m, h, n).has_value();
}

FrequencySlice embed_sr_to_mh(const FrequencySlice& slice) {
    if (slice.domain != SliceDomain::SourceReceiver)
        throw std::invalid_argument("embed_sr_to_mh: input must be a source-receiver slice");
    if (slice.values.rows() != slice.values.cols())
        throw std::invalid_argument("embed_sr_to_mh: input must be square");
    const std::size_t n = static_cast<std::size_t>(slice.values.rows());
    if (n == 0) throw std::invalid_argument("embed_sr_to_mh: empty slice");

    FrequencySlice out;
    out.freq_hz = slice.freq_hz;
    out.domain = SliceDomain::MidpointOffset;
    out.values = CMatrix::Zero(2 * n - 1, 2 * n - 1);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            out.values(static_cast<Eigen::Index>(mh.m), static_cast<Eigen::Index>(mh.h)) =
                slice.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r));
        }
    return out;
}

FrequencySlice extract_mh_to_sr(const FrequencySlice& slice) {
    if (slice.domain != SliceDomain::MidpointOffset)
        throw std::invalid_argument("extract_mh_to_sr: input must be a midpoint-offset slice");
    const Eigen::Index size = slice.values.rows();
    if (size != slice.values.cols() || size % 2 == 0)
        throw std::invalid_argument("extract_mh_to_sr: input must be square and odd-sized");
    const std::size_t n = (static_cast<std::size_t>(size) + 1) / 2;

    FrequencySlice out;
    out.freq_hz = slice.freq_hz;
    out.domain = SliceDomain::SourceReceiver;
    out.values = CMatrix::Zero(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            out.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
                slice.values(static_cast<Eigen::Index>(mh.m), static_cast<Eigen::Index>(mh.h));
        }
    return out;
}

void zero_invalid_mh_cells(CMatrix& values) {
    const Eigen::Index size = values.rows();
    if (size != values.cols() || size % 2 == 0)
        throw std::invalid_argument("zero_invalid_mh_cells: matrix must be square and odd-sized");
    const std::size_t n = (static_cast<std::size_t>(size) + 1) / 2;
    for (Eigen::Index m = 0; m < size; ++m)
        for (Eigen::Index h = 0; h < size; ++h)
            if (!mh_cell_valid(static_cast<std::size_t>(m), static_cast<std::size_t>(h), n))
                values(m, h) = Complex(0.0, 0.0);
}

}  // namespace swr
