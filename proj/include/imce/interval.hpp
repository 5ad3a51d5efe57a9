#pragma once

#include <span>
#include <string>
#include <vector>

namespace imce {

/// Closed bounded interval [lower, upper] on the real line.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    Interval() = default;
    Interval(double lo, double hi);

    double center() const { return 0.5 * (lower + upper); }
    double radius() const { return 0.5 * (upper - lower); }
    double length() const { return upper - lower; }

    static Interval from_center_radius(double c, double r);

    bool operator==(const Interval&) const = default;
};

/// Ordered collection of intervals with a provenance tag (seed or file path).
struct IntervalSample {
    std::vector<Interval> items;
    std::string provenance;

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
};

/// True iff x and box intersect (closed intervals: touching counts).
bool hits(const Interval& x, const Interval& box);

/// Linear combination sum_i c_i * x_i with scalar set multiplication and
/// Minkowski addition. Negative coefficients flip endpoints.
Interval scale_add(std::span<const double> coeffs, std::span<const Interval> xs);

/// Aumann mean of a sample: [mean of lowers, mean of uppers].
Interval sample_aumann_mean(const IntervalSample& s);

/// Variance of a sample of intervals:
/// svar(lowers)/2 + svar(uppers)/2, with n-1 denominator.
double sample_variance(const IntervalSample& s);

}  // namespace imce
