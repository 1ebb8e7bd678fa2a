#pragma once

#include "swr/geometry.hpp"

#include <cstdint>
#include <vector>

namespace swr {

// Observed-source set of a jitter-subsampled line. Exactly one kept source
// per contiguous bin of `factor` indices, so consecutive gaps never exceed
// 2*factor - 1.
struct SourceMask {
    std::size_t n_sources = 0;
    std::size_t factor = 1;
    std::vector<std::size_t> kept;

    void validate() const;
};

// Monochromatic data gathered at the observed source/receiver combinations,
// receiver index fastest.
struct ObservedData {
    CVector values;
    SourceMask mask;
    double freq_hz = 0.0;

    std::size_t n_receivers() const {
        return mask.kept.empty() ? 0 : values.size() / mask.kept.size();
    }
    void validate() const;
};

// One uniformly random index per bin of `factor` sources (the last bin may be
// shorter). Deterministic given the seed; draws come from swr::Rng.
SourceMask jittered_mask(std::size_t n_sources, std::size_t factor, std::uint64_t seed);

// Gather: out[k * n_r + r] = X(m, h) at the midpoint-offset cell of
// (kept[k], r). Linear in X.
ObservedData sample(const FrequencySlice& mh_slice, const SourceMask& mask);

// Scatter: puts each observed value back at its midpoint-offset cell, zeros
// everywhere else (invalid-parity cells included).
FrequencySlice sample_adjoint(const ObservedData& observed);

// Predicted data A(L R^H) evaluated entrywise from the factors; the dense
// product is never formed.
CVector sample_product(const CMatrix& L, const CMatrix& R, const SourceMask& mask);

}  // namespace swr
