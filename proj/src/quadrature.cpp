#include "imce/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace imce {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: p holds P_n(x), pm1 holds P_{n-1}(x).
            double p = x, pm1 = 1.0;
            for (int k = 2; k <= n; ++k) {
                const double pm2 = pm1;
                pm1 = p;
                p = ((2.0 * k - 1.0) * x * pm1 - (k - 1.0) * pm2) / k;
            }
            dp = n * (x * p - pm1) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth, bool& converged, double& worst) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || h < 1e-300) {
        if (std::abs(err) > tol) {
            converged = false;
            worst = std::max(worst, std::abs(err));
        }
        return left + right + err;
    }
    if (depth <= 0) {
        converged = false;
        worst = std::max(worst, std::abs(err));
        return left + right + err;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                       converged, worst) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                       converged, worst);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol, int max_depth) {
    if (!(lo <= hi)) throw std::invalid_argument("adaptive_simpson: bad range");
    if (lo == hi) return 0.0;
    const double fa = f(lo), fb = f(hi);
    const double m = 0.5 * (lo + hi);
    const double fm = f(m);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    bool converged = true;
    double worst = 0.0;
    const double v =
        simpson_rec(f, lo, hi, fa, fm, fb, whole, tol, max_depth, converged, worst);
    if (!converged) {
        throw std::runtime_error(
            "adaptive_simpson: non-convergence, achieved tolerance " +
            std::to_string(worst));
    }
    return v;
}

}  // namespace imce
