#pragma once

#include <cstdint>
#include <vector>

#include "imce/empirical.hpp"
#include "imce/interval.hpp"
#include "imce/model.hpp"

namespace imce {

/// Integration region S in center/radius coordinates: boxes
/// [x - y, x + y] for x in [x_min, x_max], y in [y_min, y_max].
struct RegionS {
    double x_min, x_max;
    double y_min, y_max;

    RegionS(double xmin, double xmax, double ymin, double ymax);
};

/// Rule-of-thumb region covering most boxes that hit the observed intervals:
/// x-range = [min center - mean radius, max center + mean radius],
/// y-range = [0, 1.25 * max radius].
RegionS region_auto(const IntervalSample& s);

/// Tensor Gauss-Legendre rule over a RegionS, with nodes mapped to (a,b)
/// boxes and the Jacobian 2 of the (x,y) -> (a,b) map folded into weights.
struct QuadratureRule {
    std::vector<Interval> nodes;
    std::vector<double> weights;
    int order_x = 0;
    int order_y = 0;
    std::uint64_t fingerprint = 0;
};

QuadratureRule make_rule(const RegionS& region, int order_x, int order_y);

/// Constant weight function W(a,b) = c with 0 < c < inf.
struct WeightFn {
    double c = 1.0;
};

/// The contrast functional H(X(n); theta): quadrature of
/// [T_theta - T_hat]^2 W over S against a prebuilt hit cache.
/// Uses hitting_approx when valid at theta, else hitting_exact.
double contrast_H(const ThetaParams& theta, const HitCountCache& cache,
                  const QuadratureRule& rule, const WeightFn& w,
                  HittingMode mode = HittingMode::kAuto,
                  double neglect_threshold = 1e-8);

/// Limiting contrast N(theta, zeta): quadrature of [T_theta - T_zeta]^2 W.
double limiting_N(const ThetaParams& theta, const ThetaParams& zeta,
                  const QuadratureRule& rule, const WeightFn& w,
                  HittingMode mode = HittingMode::kAuto,
                  double neglect_threshold = 1e-8);

}  // namespace imce
