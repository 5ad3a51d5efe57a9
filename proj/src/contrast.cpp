#include "imce/contrast.hpp"

#include <algorithm>
#include <stdexcept>

#include "imce/quadrature.hpp"

namespace imce {

RegionS::RegionS(double xmin, double xmax, double ymin, double ymax)
    : x_min(xmin), x_max(xmax), y_min(ymin), y_max(ymax) {
    if (!(x_min < x_max) || !(0.0 <= y_min) || !(y_min < y_max)) {
        throw std::invalid_argument("RegionS: need x_min < x_max and 0 <= y_min < y_max");
    }
}

RegionS region_auto(const IntervalSample& s) {
    if (s.empty()) throw std::invalid_argument("region_auto: empty sample");
    double cmin = s.items.front().center(), cmax = cmin;
    double rsum = 0.0, rmax = 0.0;
    for (const auto& x : s.items) {
        cmin = std::min(cmin, x.center());
        cmax = std::max(cmax, x.center());
        rsum += x.radius();
        rmax = std::max(rmax, x.radius());
    }
    const double rmean = rsum / static_cast<double>(s.size());
    if (!(rmax > 0.0)) throw std::invalid_argument("region_auto: degenerate sample radii");
    return RegionS(cmin - rmean, cmax + rmean, 0.0, 1.25 * rmax);
}

QuadratureRule make_rule(const RegionS& region, int order_x, int order_y) {
    if (order_x < 2 || order_y < 2) {
        throw std::invalid_argument("make_rule: orders must be >= 2");
    }
    const GaussLegendre gx = gauss_legendre(order_x);
    const GaussLegendre gy = gauss_legendre(order_y);
    const double cx = 0.5 * (region.x_min + region.x_max);
    const double hx = 0.5 * (region.x_max - region.x_min);
    const double cy = 0.5 * (region.y_min + region.y_max);
    const double hy = 0.5 * (region.y_max - region.y_min);

    QuadratureRule rule;
    rule.order_x = order_x;
    rule.order_y = order_y;
    rule.nodes.reserve(static_cast<std::size_t>(order_x) * order_y);
    rule.weights.reserve(rule.nodes.capacity());
    for (int i = 0; i < order_x; ++i) {
        const double x = cx + hx * gx.nodes[i];
        for (int j = 0; j < order_y; ++j) {
            const double y = cy + hy * gy.nodes[j];
            rule.nodes.emplace_back(x - y, x + y);
            // Jacobian of (x,y) -> (a,b) is 2.
            rule.weights.push_back(gx.weights[i] * gy.weights[j] * hx * hy * 2.0);
        }
    }
    rule.fingerprint = fingerprint_nodes(rule.nodes);
    return rule;
}

double contrast_H(const ThetaParams& theta, const HitCountCache& cache,
                  const QuadratureRule& rule, const WeightFn& w,
                  HittingMode mode, double neglect_threshold) {
    if (cache.nodes_fingerprint != rule.fingerprint) {
        throw std::invalid_argument("contrast_H: cache/rule fingerprint mismatch");
    }
    if (!(w.c > 0.0)) throw std::invalid_argument("contrast_H: weight must be positive");
    const double inv_n = 1.0 / static_cast<double>(cache.n);
    double H = 0.0;  // fixed node order keeps the sum deterministic
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double T = hitting_eval(theta, rule.nodes[j], mode, neglect_threshold);
        const double gap = T - cache.counts[j] * inv_n;
        H += rule.weights[j] * w.c * gap * gap;
    }
    return H;
}

double limiting_N(const ThetaParams& theta, const ThetaParams& zeta,
                  const QuadratureRule& rule, const WeightFn& w,
                  HittingMode mode, double neglect_threshold) {
    double N = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double gap = hitting_eval(theta, rule.nodes[j], mode, neglect_threshold) -
                           hitting_eval(zeta, rule.nodes[j], mode, neglect_threshold);
        N += rule.weights[j] * w.c * gap * gap;
    }
    return N;
}

}  // namespace imce
