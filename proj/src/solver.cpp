#include "swr/solver.hpp"

#include "swr/errors.hpp"
#include "swr/random.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <limits>

namespace swr {

namespace {

constexpr double kDivergenceFactor = 1e6;
constexpr int kMaxHalvings = 20;
constexpr int kNonMonotoneWindow = 5;

bool all_finite(const CMatrix& M) { return M.allFinite(); }

struct EvalResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    double misfit = std::numeric_limits<double>::quiet_NaN();
    CMatrix grad_L;
    CMatrix grad_R;
    bool finite = false;
};

// No-throw evaluation; the line search treats non-finite trials as rejected.
EvalResult evaluate(const FactorPair& factors, const WeightOperator& qop,
                    const WeightOperator& wop, const ObservedData& b, double lambda) {
    EvalResult out;
    const CMatrix lw = qop.apply(factors.L, true);
    const CMatrix rw = wop.apply(factors.R, true);

    ObservedData rho = b;
    rho.values = sample_product(lw, rw, b.mask) - b.values;

    const double misfit_sq = rho.values.squaredNorm();
    const double penalty = factors.L.squaredNorm() + factors.R.squaredNorm();
    out.value = 0.5 * misfit_sq + 0.5 * lambda * penalty;
    out.misfit = std::sqrt(misfit_sq);

    const CMatrix g = sample_adjoint(rho).values;
    out.grad_L = qop.apply(g * rw, true) + lambda * factors.L;
    out.grad_R = wop.apply(g.adjoint() * lw, true) + lambda * factors.R;
    out.finite = std::isfinite(out.value) && all_finite(out.grad_L) && all_finite(out.grad_R);
    return out;
}

double real_inner(const CMatrix& a, const CMatrix& b) {
    return a.cwiseProduct(b.conjugate()).sum().real();
}

double effective_lambda(const SolveParams& params, const ObservedData& b) {
    return params.lambda_scaled ? params.lambda * b.values.squaredNorm() : params.lambda;
}

// Per-row lists of partner indices touched by the observed cells: for each
// midpoint row m the offset rows h it is sampled against, and vice versa.
struct PartnerLists {
    std::vector<std::vector<Eigen::Index>> rows;
    std::vector<std::vector<Eigen::Index>> cols;
};

PartnerLists observed_partners(const SourceMask& mask) {
    const std::size_t n = mask.n_sources;
    PartnerLists partners;
    partners.rows.resize(2 * n - 1);
    partners.cols.resize(2 * n - 1);
    for (std::size_t s : mask.kept)
        for (std::size_t r = 0; r < n; ++r) {
            const MhIndex mh = sr_to_mh(s, r, n);
            partners.rows[mh.m].push_back(static_cast<Eigen::Index>(mh.h));
            partners.cols[mh.h].push_back(static_cast<Eigen::Index>(mh.m));
        }
    return partners;
}

// Rows of `target` whose observations span fewer than rank directions carry
// components the data never constrains (the gradient there is pure penalty
// decay and the entries keep their random-init values). Replace each such row
// by its projection onto the span the observations do constrain: every
// sampled product is preserved exactly and the Frobenius norm can only drop.
void least_norm_rows(CMatrix& target, const CMatrix& partner,
                     const std::vector<std::vector<Eigen::Index>>& lists) {
    const Eigen::Index rank = target.cols();
    for (Eigen::Index i = 0; i < target.rows(); ++i) {
        const auto& list = lists[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(list.size()) >= rank) continue;
        if (list.empty()) {
            target.row(i).setZero();
            continue;
        }
        CMatrix basis(rank, static_cast<Eigen::Index>(list.size()));
        for (std::size_t j = 0; j < list.size(); ++j)
            basis.col(static_cast<Eigen::Index>(j)) = partner.row(list[j]).transpose();
        Eigen::HouseholderQR<CMatrix> qr(basis);
        const CMatrix q = qr.householderQ() * CMatrix::Identity(rank, basis.cols());
        target.row(i) = (q * (q.adjoint() * target.row(i).transpose())).transpose();
    }
}

// Least-norm cleanup of the returned iterate, applied in the physical
// coordinates the sampling operator sees.
FactorPair least_norm_cleanup(const FactorPair& barred, const WeightOperator& qop,
                              const WeightOperator& wop, const SourceMask& mask) {
    const PartnerLists partners = observed_partners(mask);
    CMatrix lw = qop.apply(barred.L, true);
    CMatrix rw = wop.apply(barred.R, true);
    least_norm_rows(lw, rw, partners.rows);
    least_norm_rows(rw, lw, partners.cols);
    FactorPair out;
    out.L = qop.apply(lw, false);
    out.R = wop.apply(rw, false);
    return out;
}

}  // namespace

void FactorPair::validate() const {
    if (L.rows() != R.rows()) throw std::invalid_argument("factors: row count mismatch");
    if (L.cols() != R.cols() || L.cols() < 1)
        throw std::invalid_argument("factors: rank must be >= 1 and shared");
    if (!all_finite(L) || !all_finite(R))
        throw std::invalid_argument("factors: non-finite entry");
}

void SolveParams::validate() const {
    if (rank < 1) throw std::invalid_argument("solve params: rank must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("solve params: max_iters must be >= 1");
    if (lambda < 0.0) throw std::invalid_argument("solve params: lambda must be >= 0");
    if (misfit_tol < 0.0) throw std::invalid_argument("solve params: misfit_tol must be >= 0");
}

FactorPair init_factors(std::size_t n_sources, Eigen::Index rank, const ObservedData& b,
                        std::uint64_t seed) {
    if (rank < 1) throw std::invalid_argument("init_factors: rank must be >= 1");
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * n_sources - 1);
    if (rank > dim) {
        std::cerr << "swr: rank " << rank << " clamped to slice dimension " << dim << "\n";
        rank = dim;
    }

    Rng rng(seed);
    FactorPair factors;
    factors.L.resize(dim, rank);
    factors.R.resize(dim, rank);
    for (Eigen::Index c = 0; c < rank; ++c)
        for (Eigen::Index i = 0; i < dim; ++i) factors.L(i, c) = rng.complex_gaussian();
    for (Eigen::Index c = 0; c < rank; ++c)
        for (Eigen::Index i = 0; i < dim; ++i) factors.R(i, c) = rng.complex_gaussian();

    const double b_norm = b.values.norm();
    const double pred_norm = sample_product(factors.L, factors.R, b.mask).norm();
    const double scale = (b_norm > 0.0 && pred_norm > 0.0) ? std::sqrt(b_norm / pred_norm) : 0.0;
    factors.L *= scale;
    factors.R *= scale;
    return factors;
}

ObjectiveResult objective_and_gradient(const FactorPair& factors, const WeightOperator& qop,
                                       const WeightOperator& wop, const ObservedData& b,
                                       double lambda) {
    factors.validate();
    const EvalResult eval = evaluate(factors, qop, wop, b, lambda);
    if (!eval.finite) throw NumericError("objective: non-finite intermediate");
    return {eval.value, eval.misfit, eval.grad_L, eval.grad_R};
}

std::pair<FactorPair, SolveStats> solve_slice(const ObservedData& b, const WeightOperator& qop,
                                              const WeightOperator& wop,
                                              const SolveParams& params) {
    params.validate();
    b.validate();
    const double lambda = effective_lambda(params, b);

    FactorPair current = init_factors(b.mask.n_sources, params.rank, b, params.seed);
    EvalResult eval = evaluate(current, qop, wop, b, lambda);
    if (!eval.finite) throw SolverFailure("solver: non-finite initial objective", {});

    const double initial_objective = eval.value;
    FactorPair best = current;
    double best_objective = eval.value;
    double best_misfit = eval.misfit;

    std::deque<double> recent{eval.value};

    const double grad_norm0 =
        std::sqrt(eval.grad_L.squaredNorm() + eval.grad_R.squaredNorm());
    const double x_norm0 = std::sqrt(current.L.squaredNorm() + current.R.squaredNorm());
    const double fallback_step =
        grad_norm0 > 0.0 ? std::max(x_norm0, 1.0) / (10.0 * grad_norm0) : 0.0;
    double step = fallback_step;

    SolveStats stats;
    for (int iter = 1; iter <= params.max_iters; ++iter) {
        const double grad_norm_sq = eval.grad_L.squaredNorm() + eval.grad_R.squaredNorm();
        if (grad_norm_sq == 0.0) {
            // Stationary point; nothing further to record beyond this iterate.
            stats.iterations = iter;
            stats.misfit_history.push_back(best_misfit);
            stats.objective_history.push_back(best_objective);
            break;
        }
        if (params.step_rule == StepRule::FixedBacktracking) step = fallback_step;

        const double accept_bar = *std::max_element(recent.begin(), recent.end());
        FactorPair trial;
        EvalResult trial_eval;
        double trial_step = step;
        for (int halving = 0; halving <= kMaxHalvings; ++halving) {
            trial.L = current.L - trial_step * eval.grad_L;
            trial.R = current.R - trial_step * eval.grad_R;
            trial_eval = evaluate(trial, qop, wop, b, lambda);
            if (trial_eval.finite && trial_eval.value <= accept_bar) break;
            trial_step *= 0.5;
        }
        if (!trial_eval.finite)
            throw SolverFailure("solver: non-finite objective at iteration " +
                                    std::to_string(iter),
                                stats);

        if (params.step_rule == StepRule::BarzilaiBorwein) {
            // BB1 spectral step from the accepted pair (s, y).
            const CMatrix s_l = trial.L - current.L;
            const CMatrix s_r = trial.R - current.R;
            const CMatrix y_l = trial_eval.grad_L - eval.grad_L;
            const CMatrix y_r = trial_eval.grad_R - eval.grad_R;
            const double ss = s_l.squaredNorm() + s_r.squaredNorm();
            const double sy = real_inner(s_l, y_l) + real_inner(s_r, y_r);
            step = (std::isfinite(sy) && sy > 0.0) ? ss / sy : fallback_step;
        }

        current = std::move(trial);
        eval = trial_eval;

        recent.push_back(eval.value);
        if (recent.size() > static_cast<std::size_t>(kNonMonotoneWindow)) recent.pop_front();

        if (eval.value < best_objective) {
            best = current;
            best_objective = eval.value;
            best_misfit = eval.misfit;
        }

        stats.iterations = iter;
        stats.misfit_history.push_back(best_misfit);
        stats.objective_history.push_back(best_objective);

        if (eval.value > kDivergenceFactor * std::max(initial_objective, 1e-300)) {
            stats.final_objective = best_objective;
            throw SolverFailure("solver: objective diverged at iteration " + std::to_string(iter),
                                stats);
        }
        if (params.misfit_tol > 0.0 && best_misfit <= params.misfit_tol) break;
    }

    // Strip the data-blind components the iteration could never correct; the
    // sampled products and therefore the misfit are untouched.
    best = least_norm_cleanup(best, qop, wop, b.mask);
    stats.final_objective =
        0.5 * best_misfit * best_misfit +
        0.5 * lambda * (best.L.squaredNorm() + best.R.squaredNorm());
    return {std::move(best), std::move(stats)};
}

}  // namespace swr
