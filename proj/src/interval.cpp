#include "imce/interval.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace imce {

Interval::Interval(double lo, double hi) : lower(lo), upper(hi) {
    if (!(lo <= hi)) {
        throw std::invalid_argument("Interval: lower must not exceed upper");
    }
}

Interval Interval::from_center_radius(double c, double r) {
    if (r < 0.0) throw std::invalid_argument("Interval: negative radius");
    return Interval(c - r, c + r);
}

bool hits(const Interval& x, const Interval& box) {
    return box.lower <= x.upper && box.upper >= x.lower;
}

Interval scale_add(std::span<const double> coeffs, std::span<const Interval> xs) {
    if (coeffs.empty() || coeffs.size() != xs.size()) {
        throw std::invalid_argument("scale_add: empty combination");
    }
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double c = coeffs[i];
        if (c >= 0.0) {
            lo += c * xs[i].lower;
            hi += c * xs[i].upper;
        } else {
            lo += c * xs[i].upper;
            hi += c * xs[i].lower;
        }
    }
    return Interval(lo, hi);
}

Interval sample_aumann_mean(const IntervalSample& s) {
    if (s.empty()) throw std::invalid_argument("sample_aumann_mean: empty sample");
    double lo = 0.0, hi = 0.0;
    for (const auto& x : s.items) {
        lo += x.lower;
        hi += x.upper;
    }
    const double n = static_cast<double>(s.size());
    return Interval(lo / n, hi / n);
}

namespace {

double svar(const IntervalSample& s, double Interval::* field) {
    const double n = static_cast<double>(s.size());
    double mean = 0.0;
    for (const auto& x : s.items) mean += x.*field;
    mean /= n;
    double ss = 0.0;
    for (const auto& x : s.items) {
        const double d = x.*field - mean;
        ss += d * d;
    }
    return ss / (n - 1.0);
}

}  // namespace

double sample_variance(const IntervalSample& s) {
    if (s.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 items");
    return 0.5 * svar(s, &Interval::lower) + 0.5 * svar(s, &Interval::upper);
}

}  // namespace imce
