#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace swr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Square 2D acquisition line: one source and one receiver position per grid
// node, regular spacings, regular time sampling.
struct GridGeometry {
    std::size_t n_sources = 0;
    std::size_t n_receivers = 0;
    std::size_t n_time = 0;
    double dt = 0.0;     // s
    double d_src = 1.0;  // m
    double d_rcv = 1.0;  // m

    // The midpoint-offset mapping below assumes a square grid; rectangular
    // lines are rejected rather than half-supported.
    void validate() const;

    std::size_t mh_size() const { return 2 * n_sources - 1; }
    double nyquist_hz() const { return 0.5 / dt; }
    std::size_t trace_count() const { return n_sources * n_receivers; }
};

bool operator==(const GridGeometry& a, const GridGeometry& b);

// Time-domain cube, samples indexed (source, receiver, time), time fastest.
struct SeismicVolume {
    GridGeometry geometry;
    std::vector<double> samples;

    SeismicVolume() = default;
    explicit SeismicVolume(const GridGeometry& g)
        : geometry(g), samples(g.n_sources * g.n_receivers * g.n_time, 0.0) {
        geometry.validate();
    }

    double& at(std::size_t s, std::size_t r, std::size_t t) {
        return samples[(s * geometry.n_receivers + r) * geometry.n_time + t];
    }
    double at(std::size_t s, std::size_t r, std::size_t t) const {
        return samples[(s * geometry.n_receivers + r) * geometry.n_time + t];
    }

    // Extent match and finiteness of every sample.
    void validate() const;

    double norm() const;
};

enum class SliceDomain { SourceReceiver, MidpointOffset };

// One temporal-frequency component of a line. SourceReceiver slices are
// n x n; MidpointOffset slices are (2n-1) x (2n-1) with the invalid-parity
// cells held at zero.
struct FrequencySlice {
    double freq_hz = 0.0;
    SliceDomain domain = SliceDomain::SourceReceiver;
    CMatrix values;
};

struct MhIndex {
    std::size_t m = 0;
    std::size_t h = 0;
};

struct SrIndex {
    std::size_t s = 0;
    std::size_t r = 0;
};

// m = s + r, h = s - r + (n - 1). Throws std::invalid_argument out of range.
MhIndex sr_to_mh(std::size_t s, std::size_t r, std::size_t n);

// Inverse map; empty when (m, h) violates parity or lands outside the grid.
std::optional<SrIndex> mh_to_sr(std::size_t m, std::size_t h, std::size_t n);

bool mh_cell_valid(std::size_t m, std::size_t h, std::size_t n);

// n x n source-receiver slice -> (2n-1) x (2n-1) midpoint-offset slice,
// zeros at invalid-parity cells.
FrequencySlice embed_sr_to_mh(const FrequencySlice& slice);

// Gathers the n^2 valid cells back; whatever sits at invalid cells is ignored.
FrequencySlice extract_mh_to_sr(const FrequencySlice& slice);

// Zeroes the invalid-parity cells of an MH-domain matrix in place.
void zero_invalid_mh_cells(CMatrix& values);

}  // namespace swr
