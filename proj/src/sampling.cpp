#include "swr/sampling.hpp"

#include "swr/random.hpp"

#include <stdexcept>
#include <string>

namespace swr {

void SourceMask::validate() const {
    if (n_sources == 0) throw std::invalid_argument("mask: n_sources must be positive");
    if (factor == 0 || factor > n_sources)
        throw std::invalid_argument("mask: factor must be in [1, n_sources]");
    const std::size_t bins = (n_sources + factor - 1) / factor;
    if (kept.size() != bins)
        throw std::invalid_argument("mask: expected one kept source per bin");
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const std::size_t lo = k * factor;
        const std::size_t hi = std::min((k + 1) * factor, n_sources);
        if (kept[k] < lo || kept[k] >= hi)
            throw std::invalid_argument("mask: kept index " + std::to_string(kept[k]) +
                                        " falls outside bin " + std::to_string(k));
        if (k > 0 && kept[k] <= kept[k - 1])
            throw std::invalid_argument("mask: kept indices must be strictly increasing");
    }
}

void ObservedData::validate() const {
    mask.validate();
    if (mask.kept.empty() || values.size() % static_cast<Eigen::Index>(mask.kept.size()) != 0)
        throw std::invalid_argument("observed data: length inconsistent with mask");
}

SourceMask jittered_mask(std::size_t n_sources, std::size_t factor, std::uint64_t seed) {
    if (n_sources == 0) throw std::invalid_argument("jittered_mask: n_sources must be positive");
    if (factor == 0 || factor > n_sources)
        throw std::invalid_argument("jittered_mask: factor must be in [1, n_sources]");

    SourceMask mask;
    mask.n_sources = n_sources;
    mask.factor = factor;
    Rng rng(seed);
    for (std::size_t lo = 0; lo < n_sources; lo += factor) {
        const std::size_t width = std::min(factor, n_sources - lo);
        mask.kept.push_back(lo + static_cast<std::size_t>(rng.below(width)));
    }
    return mask;
}

ObservedData sample(const FrequencySlice& mh_slice, const SourceMask& mask) {
    mask.validate();
    if (mh_slice.domain != SliceDomain::MidpointOffset)
        throw std::invalid_argument("sample: slice must be in the midpoint-offset domain");
    const std::size_t n = mask.n_sources;
    if (mh_slice.values.rows() != static_cast<Eigen::Index>(2 * n - 1) ||
        mh_slice.values.cols() != static_cast<Eigen::Index>(2 * n - 1))
        throw std::invalid_argument("sample: slice shape inconsistent with mask geometry");

    ObservedData out;
    out.mask = mask;
    out.freq_hz = mh_slice.freq_hz;
    out.values.resize(static_cast<Eigen::Index>(mask.kept.size() * n));
    Eigen::Index j = 0;
    for (std::size_t s : mask.kept)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            out.values[j++] = mh_slice.values(static_cast<Eigen::Index>(mh.m),
                                              static_cast<Eigen::Index>(mh.h));
        }
    return out;
}

FrequencySlice sample_adjoint(const ObservedData& observed) {
    observed.validate();
    const std::size_t n = observed.mask.n_sources;
    if (observed.n_receivers() != n)
        throw std::invalid_argument("sample_adjoint: length inconsistent with square geometry");

    FrequencySlice out;
    out.freq_hz = observed.freq_hz;
    out.domain = SliceDomain::MidpointOffset;
    out.values = CMatrix::Zero(2 * n - 1, 2 * n - 1);
    Eigen::Index j = 0;
    for (std::size_t s : observed.mask.kept)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            out.values(static_cast<Eigen::Index>(mh.m), static_cast<Eigen::Index>(mh.h)) =
                observed.values[j++];
        }
    return out;
}

CVector sample_product(const CMatrix& L, const CMatrix& R, const SourceMask& mask) {
    mask.validate();
    const std::size_t n = mask.n_sources;
    if (L.rows() != static_cast<Eigen::Index>(2 * n - 1) || L.rows() != R.rows() ||
        L.cols() != R.cols())
        throw std::invalid_argument("sample_product: factor shapes inconsistent with mask");

    CVector out(static_cast<Eigen::Index>(mask.kept.size() * n));
    Eigen::Index j = 0;
    for (std::size_t s : mask.kept)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            // (L R^H)(m, h); Eigen's dot conjugates its first argument.
            out[j++] = R.row(static_cast<Eigen::Index>(mh.h))
                           .dot(L.row(static_cast<Eigen::Index>(mh.m)));
        }
    return out;
}

}  // namespace swr
