#pragma once

#include <functional>

#include <Eigen/Dense>

#include "imce/config.hpp"
#include "imce/contrast.hpp"
#include "imce/model.hpp"

namespace imce {

using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Vector5d = Eigen::Matrix<double, 5, 1>;

/// Unconstrained coordinates (a0, mu, log l11, l21, log l22) with
/// Sigma = L L^T, L lower-triangular with positive diagonal. Bijective with
/// the strictly positive definite parameter set.
Vector5d to_unconstrained(const ThetaParams& theta);
ThetaParams to_theta(const Vector5d& u);

struct FitDiagnostics {
    RegionS region{0.0, 1.0, 0.0, 1.0};
    int order_x = 0;
    int order_y = 0;
    HittingMode hitting_mode = HittingMode::kAuto;
    double simplex_final_diameter = 0.0;
    double simplex_final_fspread = 0.0;
    bool covariance_used_pinv = false;
    /// Dimension of the contrast-null parameter subspace (directions along
    /// which the hitting function carries no information at theta_hat); in
    /// those directions theta_hat is pinned to the moment initializer and the
    /// covariance carries the initializer's bootstrap variance instead of the
    /// (undefined) sandwich term.
    int null_space_dim = 0;
};

struct FitResult {
    ThetaParams theta_hat;
    double contrast_value = 0.0;
    ThetaParams init;
    int iterations = 0;
    bool converged = false;
    /// Per-observation asymptotic covariance; covariance of theta_hat is
    /// asym_cov / n.
    Matrix5d asym_cov = Matrix5d::Zero();
    FitDiagnostics diagnostics;
};

/// Minimum contrast fit: moment initialization, Nelder-Mead minimization of
/// contrast_H in the unconstrained space, and the sandwich covariance.
FitResult fit(const IntervalSample& s, const ContrastConfig& cfg);

/// Central finite-difference gradient of the hitting function in theta-space,
/// step h * max(1, |theta_i|) per component.
Vector5d grad_T(const ThetaParams& theta, const Interval& box, double h = 1e-5,
                HittingMode mode = HittingMode::kAuto,
                double neglect_threshold = 1e-8);

/// P(X hits box1 and X hits box2) via the clamped conditional integral on the
/// overlap box [max(a,c), min(b,d)] (which may be empty as an interval).
double joint_hitting_prob(const ThetaParams& theta, const Interval& box1,
                          const Interval& box2);

/// C(T) = 2 * integral over S of grad T grad T' W.
Matrix5d matrix_C(const ThetaParams& theta, const ContrastConfig& cfg);

/// Xi of the limit law: 4 * integral over SxS of
/// [P_joint - T T] grad_i T grad_j T W W, at reduced quadrature order
/// cfg.xi_order (or by score simulation when cfg.xi_method is kMonteCarlo).
Matrix5d matrix_Xi(const ThetaParams& theta, const ContrastConfig& cfg);

struct SandwichResult {
    Matrix5d cov = Matrix5d::Zero();
    bool used_pinv = false;
};

/// C^-1 Xi C^-1; pseudo-inverse with a warning flag when C is
/// ill-conditioned (condition number >= 1e12).
SandwichResult sandwich_cov(const ThetaParams& theta, const ContrastConfig& cfg);

/// Result of a bare Nelder-Mead run (exposed for reuse and testing).
struct NelderMeadResult {
    Vector5d x = Vector5d::Zero();
    double fmin = 0.0;
    int iterations = 0;
    bool converged = false;
    double final_diameter = 0.0;
    double final_fspread = 0.0;
};

NelderMeadResult nelder_mead(const std::function<double(const Vector5d&)>& f,
                             const Vector5d& x0, const OptimizerConfig& opt);

}  // namespace imce
