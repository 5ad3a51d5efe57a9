#pragma once

#include <array>

namespace imce {

/// Standard normal density.
double std_normal_pdf(double x);

/// Standard normal CDF, absolute error below 1e-14.
double std_normal_cdf(double x);

/// P(Z1 <= h, Z2 <= k) for standard bivariate normal with correlation rho.
/// Gauss-Legendre scheme over the correlation-integral representation,
/// absolute error below 1e-10. rho = +-1 handled analytically.
double bvn_cdf(double h, double k, double rho);

/// Mean vector and covariance of a bivariate normal pair.
struct BvnSpec {
    std::array<double, 2> mean{0.0, 0.0};
    // Covariance entries: [ v11 v12 ; v12 v22 ].
    double v11 = 1.0;
    double v12 = 0.0;
    double v22 = 1.0;
};

/// P(Y1 <= x1, Y2 <= x2) for Y ~ BVN(spec.mean, spec.cov).
/// Zero-variance coordinates degenerate to indicators.
double affine_bvn_cdf(double x1, double x2, const BvnSpec& spec);

/// Signed truncation moments of eta ~ N(mu, sigma2):
/// eta_plus = eta*1(eta>=0), eta_minus = eta*1(eta<0).
struct TruncMoments {
    double Ep;   ///< E eta_plus
    double Em;   ///< E eta_minus
    double Ep2;  ///< E eta_plus^2
    double Em2;  ///< E eta_minus^2
    double Vp;   ///< Var(eta_plus)
    double Vm;   ///< Var(eta_minus)
};

TruncMoments trunc_moments(double mu, double sigma2);

}  // namespace imce
