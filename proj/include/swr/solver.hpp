#pragma once

#include "swr/sampling.hpp"
#include "swr/weights.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swr {

// Low-rank factors of one slice, X = L R^H. Both factors share the
// midpoint-offset leading dimension 2n - 1.
struct FactorPair {
    CMatrix L;
    CMatrix R;

    Eigen::Index rank() const { return L.cols(); }
    void validate() const;
};

enum class StepRule { BarzilaiBorwein, FixedBacktracking };

struct SolveParams {
    Eigen::Index rank = 85;
    int max_iters = 150;
    // Frobenius penalty; multiplied by |b|^2 when lambda_scaled is set. The
    // default keeps the factor energy in check over a fixed iteration budget
    // on subsampled data; exact-recovery runs on clean data want it orders of
    // magnitude smaller.
    double lambda = 1e-4;
    bool lambda_scaled = true;
    // Early stop once |rho| <= misfit_tol; 0 disables.
    double misfit_tol = 0.0;
    std::uint64_t seed = 0;
    StepRule step_rule = StepRule::BarzilaiBorwein;

    void validate() const;
};

struct SolveStats {
    int iterations = 0;
    // |rho|_2 of the best-objective iterate, recorded once per iteration; the
    // last entry therefore matches the returned factors.
    std::vector<double> misfit_history;
    // Best objective seen so far, recorded once per iteration.
    std::vector<double> objective_history;
    double final_objective = 0.0;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, SolveStats stats)
        : std::runtime_error(what), stats_(std::move(stats)) {}
    const SolveStats& stats() const { return stats_; }

private:
    SolveStats stats_;
};

// Random complex Gaussian factors scaled so the initial predicted data
// matches the observed energy: |A(L R^H)| = |b| after scaling.
FactorPair init_factors(std::size_t n_sources, Eigen::Index rank, const ObservedData& b,
                        std::uint64_t seed);

struct ObjectiveResult {
    double value = 0.0;
    double misfit = 0.0;  // |rho|_2
    CMatrix grad_L;
    CMatrix grad_R;
};

// Objective and gradient of
//
//   f(L, R) = 1/2 |A(Q^-1 L R^H W^-1) - b|^2 + lambda/2 (|L|_F^2 + |R|_F^2)
//
// with G = A*(rho):
//   grad_L = Q^-1 (G (W^-1 R)) + lambda L
//   grad_R = W^-1 (G^H (Q^-1 L)) + lambda R
// The finite-difference convention: (f(F+hD) - f(F-hD)) / 2h = Re<g, D>.
ObjectiveResult objective_and_gradient(const FactorPair& factors, const WeightOperator& qop,
                                       const WeightOperator& wop, const ObservedData& b,
                                       double lambda);

// Joint gradient descent on (L, R) with the configured step rule; runs
// max_iters iterations (or stops early at misfit_tol) and returns the iterate
// with the lowest objective seen, reduced to its least-norm representative:
// factor-row components the observations never constrain (the gradient there
// is pure penalty decay) are projected out, which leaves every sampled
// product and the misfit exactly unchanged. Throws SolverFailure on
// divergence.
std::pair<FactorPair, SolveStats> solve_slice(const ObservedData& b, const WeightOperator& qop,
                                              const WeightOperator& wop,
                                              const SolveParams& params);

}  // namespace swr
