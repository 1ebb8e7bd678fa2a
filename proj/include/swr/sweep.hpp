#pragma once

#include "swr/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swr {

enum class SweepMode { Plain, ConventionalWeighted, LimitedSubspace };

// Low-to-high frequency recovery settings. `rank` drives every per-slice
// factorization; `subspace_rank` bounds only the prior subspaces the weight
// operators are built from (ConventionalWeighted behaves as
// subspace_rank == rank).
struct SweepConfig {
    double f_min = 7.0;
    double f_max = 74.0;
    Eigen::Index rank = 85;
    Eigen::Index subspace_rank = 25;
    double weight = 0.5;
    SweepMode mode = SweepMode::LimitedSubspace;
    SolveParams solve;

    void validate() const;
};

struct RecoveredSlice {
    double freq_hz = 0.0;
    // Unweighted solution factors, X = L R^H.
    FactorPair factors;
    // Midpoint-offset S/R against the embedded truth, when truth was supplied.
    std::optional<double> snr_db;
};

struct RecoveredBand {
    GridGeometry geometry;
    std::vector<RecoveredSlice> slices;
};

struct FactoredSvdResult {
    Subspace left;
    Eigen::VectorXd singular_values;
    Subspace right;
};

// Top-k SVD of L R^H computed from thin QR factors and an r x r SVD; the
// dense product is never formed.
FactoredSvdResult factored_svd(const CMatrix& L, const CMatrix& R, Eigen::Index k);

// Maps barred solver variables back to physical ones:
// L_x = Q^-1 Lbar, R_x = W^-1 Rbar, so that X = Q^-1 Lbar Rbar^H W^-1 = L_x R_x^H.
FactorPair unweight_solution(const FactorPair& factors, const WeightOperator& qop,
                             const WeightOperator& wop);

// Carries the slices recovered before the failing one.
class SweepFailure : public std::runtime_error {
public:
    SweepFailure(const std::string& what, RecoveredBand partial, std::size_t failed_index)
        : std::runtime_error(what), partial_(std::move(partial)), failed_index_(failed_index) {}
    const RecoveredBand& partial() const { return partial_; }
    std::size_t failed_index() const { return failed_index_; }

private:
    RecoveredBand partial_;
    std::size_t failed_index_;
};

// Sweeps the observed slices in ascending frequency order. The first slice is
// always solved unweighted; afterwards each mode decides how the next slice's
// weight operators are built from the factorization just recovered.
// `truth_mh` (optional, aligned with `observed`) enables per-slice S/R.
RecoveredBand recover_band(const GridGeometry& geometry,
                           const std::vector<ObservedData>& observed, const SweepConfig& cfg,
                           const std::vector<CMatrix>* truth_mh = nullptr);

}  // namespace swr
