#pragma once

#include <functional>
#include <vector>

namespace imce {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes the order-n Gauss-Legendre rule by Newton iteration on the
/// Legendre polynomial roots. n >= 1.
GaussLegendre gauss_legendre(int n);

/// Adaptive Simpson quadrature of f on [lo, hi] to absolute tolerance tol.
/// Throws on non-convergence (recursion floor reached with the achieved
/// tolerance in the message).
double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol, int max_depth = 48);

}  // namespace imce
