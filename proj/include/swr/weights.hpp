#pragma once

#include "swr/geometry.hpp"

#include <optional>
#include <utility>

namespace swr {

// Orthonormal column basis of a prior row/column subspace.
struct Subspace {
    CMatrix basis;

    Eigen::Index dim() const { return basis.rows(); }
    Eigen::Index rank() const { return basis.cols(); }
};

// Hermitian positive-definite weight operator
//
//     Q = w U U^H + U_perp U_perp^H = I - (1 - w) U U^H,
//
// held implicitly as the identity plus a rank-r_s update; U_perp is never
// materialized, so applying Q (or its inverse) costs O(rows * r_s * cols)
// instead of O(rows^2 * cols). Eigenvalues are w on span(U) and 1 elsewhere.
class WeightOperator {
public:
    // Identity (no prior subspace).
    WeightOperator() = default;

    WeightOperator(Subspace subspace, double w);

    bool is_identity() const { return !subspace_.has_value(); }
    double weight() const { return w_; }
    const std::optional<Subspace>& subspace() const { return subspace_; }

    // Rows the operator acts on; 0 for the identity (any size fits).
    Eigen::Index dim() const { return subspace_ ? subspace_->dim() : 0; }
    Eigen::Index subspace_rank() const { return subspace_ ? subspace_->rank() : 0; }

    // (I + (w - 1) U U^H) M, or (I + (1/w - 1) U U^H) M when inverted.
    CMatrix apply(const CMatrix& M, bool inverted) const;

    // Dense materialization; test utility for small sizes. `dim` must match
    // the subspace dimension when one is present.
    CMatrix dense(Eigen::Index dim, bool inverted = false) const;

private:
    std::optional<Subspace> subspace_;
    double w_ = 1.0;
};

// Validates w in (0, 1] and the basis orthonormality (re-orthonormalizing
// via QR when column products deviate by more than 1e-8).
WeightOperator make_weight(Subspace subspace, double w);

// Sum of singular values.
double nuclear_norm(const CMatrix& M);

// Two routes to the weighted nuclear norm of X: the dense-materialization
// product |Q X W|_* and the implicit-application |Xbar|_* with
// Xbar = Q X W. Returns both; callers assert closeness.
std::pair<double, double> weighted_nuclear_identity_check(const CMatrix& X,
                                                          const WeightOperator& qop,
                                                          const WeightOperator& wop);

}  // namespace swr
