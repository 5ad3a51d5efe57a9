#pragma once

#include <cstdint>

#include "imce/interval.hpp"

namespace imce {

/// Parameters of the hierarchical interval model
/// A = [eps + a0*eta, eps + (a0+1)*eta], (eps, eta) ~ BVN((0, mu), Sigma).
/// b0 = a0 + 1 is fixed for identifiability and E eps = 0 always.
struct ThetaParams {
    double a0 = 0.0;
    double mu = 0.0;
    double s11 = 1.0;  ///< Var(eps)
    double s12 = 0.0;  ///< Cov(eps, eta)
    double s22 = 1.0;  ///< Var(eta)

    double b0() const { return a0 + 1.0; }

    /// True iff Sigma is symmetric positive semidefinite with positive diagonal.
    bool valid() const {
        return s11 > 0.0 && s22 > 0.0 && s12 * s12 <= s11 * s22;
    }

    /// Throws std::invalid_argument when invalid.
    void require_valid() const;

    /// P(eta < 0) under this parameter set.
    double prob_eta_negative() const;
};

/// Deterministic seeded draw of n intervals from the model.
IntervalSample simulate(const ThetaParams& theta, std::size_t n, std::uint64_t seed);

/// Hitting function T_theta([a,b]) as the four-term affine BVN-CDF expression.
double hitting_exact(const ThetaParams& theta, const Interval& box);

/// Single-CDF approximation, valid when P(eta<0) < neglect_threshold.
/// Throws when the precondition is violated.
double hitting_approx(const ThetaParams& theta, const Interval& box,
                      double neglect_threshold = 1e-8);

/// Independent evaluation of T_theta via a 1-D integral over eta of the
/// conditional normal law of eps. Adaptive quadrature to abs tol 1e-9.
double hitting_conditional(const ThetaParams& theta, const Interval& box);

/// Selects hitting_approx when valid at theta, else hitting_exact.
double hitting_auto(const ThetaParams& theta, const Interval& box,
                    double neglect_threshold = 1e-8);

enum class HittingMode { kAuto, kExact, kApprox };

/// Dispatches on mode; kAuto falls back to exact when the approximation
/// precondition fails.
double hitting_eval(const ThetaParams& theta, const Interval& box,
                    HittingMode mode, double neglect_threshold = 1e-8);

/// Closed-form Aumann mean [a0*Ep + b0*Em, b0*Ep + a0*Em].
Interval model_mean(const ThetaParams& theta);

/// Closed-form variance
/// s11 + (a0^2+b0^2)(Vp+Vm)/2 + (a0+b0)s12 - 2 a0 b0 Ep Em.
double model_variance(const ThetaParams& theta);

/// Fitted normal laws of the interval center and length (P(eta<0) ~ 0 regime).
struct CenterLengthLaws {
    double center_mean;
    double center_var;
    double length_mean;
    double length_var;
};

CenterLengthLaws center_length_laws(const ThetaParams& theta);

namespace internal {
/// Conditional-integral hitting probability allowing a > b (clamped
/// integrand); shared by hitting_conditional and joint_hitting_prob.
double conditional_hitting_prob(const ThetaParams& t, double a, double b);
}  // namespace internal

}  // namespace imce
