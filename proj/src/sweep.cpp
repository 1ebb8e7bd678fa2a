#include "swr/sweep.hpp"

#include "swr/random.hpp"
#include "swr/spectral.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace swr {

void SweepConfig::validate() const {
    if (!(f_min < f_max)) throw std::invalid_argument("sweep: f_min must be below f_max");
    if (rank < 1) throw std::invalid_argument("sweep: rank must be >= 1");
    if (subspace_rank < 1 || subspace_rank > rank)
        throw std::invalid_argument("sweep: subspace_rank must lie in [1, rank]");
    if (!(weight > 0.0) || weight > 1.0)
        throw std::invalid_argument("sweep: weight must lie in (0, 1]");
    solve.validate();
}

FactoredSvdResult factored_svd(const CMatrix& L, const CMatrix& R, Eigen::Index k) {
    if (L.rows() != R.rows() || L.cols() != R.cols())
        throw std::invalid_argument("factored_svd: factor shape mismatch");
    const Eigen::Index r = L.cols();
    if (k < 1 || k > r) throw std::invalid_argument("factored_svd: k must lie in [1, rank]");

    const Eigen::Index dim = L.rows();
    Eigen::HouseholderQR<CMatrix> qr_left(L);
    Eigen::HouseholderQR<CMatrix> qr_right(R);
    const CMatrix q_left = qr_left.householderQ() * CMatrix::Identity(dim, r);
    const CMatrix q_right = qr_right.householderQ() * CMatrix::Identity(dim, r);
    const CMatrix t_left = qr_left.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    const CMatrix t_right = qr_right.matrixQR().topRows(r).triangularView<Eigen::Upper>();

    Eigen::JacobiSVD<CMatrix> svd(t_left * t_right.adjoint(),
                                  Eigen::ComputeFullU | Eigen::ComputeFullV);

    FactoredSvdResult out;
    out.left.basis = q_left * svd.matrixU().leftCols(k);
    out.right.basis = q_right * svd.matrixV().leftCols(k);
    out.singular_values = svd.singularValues().head(k);
    return out;
}

FactorPair unweight_solution(const FactorPair& factors, const WeightOperator& qop,
                             const WeightOperator& wop) {
    factors.validate();
    FactorPair out;
    out.L = qop.apply(factors.L, true);
    out.R = wop.apply(factors.R, true);
    return out;
}

RecoveredBand recover_band(const GridGeometry& geometry,
                           const std::vector<ObservedData>& observed, const SweepConfig& cfg,
                           const std::vector<CMatrix>* truth_mh) {
    geometry.validate();
    cfg.validate();
    if (observed.empty()) throw std::invalid_argument("recover_band: no observed slices");
    for (std::size_t i = 1; i < observed.size(); ++i)
        if (!(observed[i].freq_hz > observed[i - 1].freq_hz))
            throw std::invalid_argument("recover_band: frequencies must be strictly ascending");
    if (truth_mh && truth_mh->size() != observed.size())
        throw std::invalid_argument("recover_band: truth slice count mismatch");

    RecoveredBand band;
    band.geometry = geometry;
    band.slices.reserve(observed.size());

    WeightOperator qop;  // identity: the first slice is solved unweighted
    WeightOperator wop;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        SolveParams params = cfg.solve;
        params.rank = cfg.rank;
        params.seed = derive_seed(cfg.solve.seed, i);

        FactorPair barred;
        try {
            auto [factors, stats] = solve_slice(observed[i], qop, wop, params);
            barred = std::move(factors);
        } catch (const SolverFailure& failure) {
            throw SweepFailure("sweep: slice " + std::to_string(i) + " at " +
                                   std::to_string(observed[i].freq_hz) + " Hz failed: " +
                                   failure.what(),
                               std::move(band), i);
        }

        RecoveredSlice slice;
        slice.freq_hz = observed[i].freq_hz;
        slice.factors = unweight_solution(barred, qop, wop);
        if (truth_mh) {
            CMatrix recovered = slice.factors.L * slice.factors.R.adjoint();
            zero_invalid_mh_cells(recovered);
            slice.snr_db = snr_db((*truth_mh)[i], recovered);
        }

        if (cfg.mode != SweepMode::Plain && i + 1 < observed.size()) {
            const Eigen::Index k =
                cfg.mode == SweepMode::LimitedSubspace ? cfg.subspace_rank : cfg.rank;
            const FactoredSvdResult svd =
                factored_svd(slice.factors.L, slice.factors.R, std::min(k, slice.factors.rank()));
            qop = make_weight(svd.left, cfg.weight);
            wop = make_weight(svd.right, cfg.weight);
        }

        band.slices.push_back(std::move(slice));
    }
    return band;
}

}  // namespace swr
