#include "swr/weights.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <stdexcept>

namespace swr {

namespace {

constexpr double kOrthoTolerance = 1e-8;

double orthonormality_defect(const CMatrix& basis) {
    const CMatrix gram = basis.adjoint() * basis;
    return (gram - CMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

WeightOperator::WeightOperator(Subspace subspace, double w)
    : subspace_(std::move(subspace)), w_(w) {
    if (!(w > 0.0) || w > 1.0)
        throw std::invalid_argument("weight: w must lie in (0, 1]");
    if (subspace_->basis.size() == 0)
        throw std::invalid_argument("weight: empty subspace basis");
    if (subspace_->rank() > subspace_->dim())
        throw std::invalid_argument("weight: subspace rank exceeds dimension");

    if (orthonormality_defect(subspace_->basis) > kOrthoTolerance) {
        Eigen::ColPivHouseholderQR<CMatrix> qr(subspace_->basis);
        if (qr.rank() < subspace_->rank())
            throw std::invalid_argument("weight: subspace basis is rank deficient");
        subspace_->basis = CMatrix(qr.householderQ()).leftCols(subspace_->rank());
    }
    // w = 1 makes the update vanish; collapse to the identity.
    if (w_ == 1.0) subspace_.reset();
}

CMatrix WeightOperator::apply(const CMatrix& M, bool inverted) const {
    if (is_identity()) return M;
    const CMatrix& U = subspace_->basis;
    if (M.rows() != U.rows())
        throw std::invalid_argument("weight apply: row count mismatch");
    const double alpha = inverted ? (1.0 / w_ - 1.0) : (w_ - 1.0);
    return M + alpha * (U * (U.adjoint() * M));
}

CMatrix WeightOperator::dense(Eigen::Index dim, bool inverted) const {
    if (subspace_ && dim != subspace_->dim())
        throw std::invalid_argument("weight dense: dimension mismatch");
    CMatrix out = CMatrix::Identity(dim, dim);
    if (subspace_) {
        const double alpha = inverted ? (1.0 / w_ - 1.0) : (w_ - 1.0);
        out += alpha * (subspace_->basis * subspace_->basis.adjoint());
    }
    return out;
}

WeightOperator make_weight(Subspace subspace, double w) {
    return WeightOperator(std::move(subspace), w);
}

double nuclear_norm(const CMatrix& M) {
    Eigen::JacobiSVD<CMatrix> svd(M);
    return svd.singularValues().sum();
}

std::pair<double, double> weighted_nuclear_identity_check(const CMatrix& X,
                                                          const WeightOperator& qop,
                                                          const WeightOperator& wop) {
    const Eigen::Index rows = X.rows();
    const Eigen::Index cols = X.cols();
    const double via_dense = nuclear_norm(qop.dense(rows) * X * wop.dense(cols));

    // Q X W through the implicit operators; X W = (W X^H)^H since W = W^H.
    const CMatrix xbar = qop.apply(wop.apply(X.adjoint(), false).adjoint(), false);
    const double via_implicit = nuclear_norm(xbar);
    return {via_dense, via_implicit};
}

}  // namespace swr
