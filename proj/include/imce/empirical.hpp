#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "imce/interval.hpp"
#include "imce/model.hpp"

namespace imce {

/// Hit counts of a fixed node set against a fixed sample. Valid only for the
/// (sample, nodes) pair it was built from; both are fingerprinted.
struct HitCountCache {
    std::vector<Interval> nodes;
    std::vector<double> counts;  ///< integer-valued for real samples
    std::size_t n = 0;
    std::uint64_t sample_fingerprint = 0;
    std::uint64_t nodes_fingerprint = 0;
};

/// FNV-1a over the raw endpoint bytes of a node list.
std::uint64_t fingerprint_nodes(const std::vector<Interval>& nodes);

/// FNV-1a over the raw endpoint bytes of a sample.
std::uint64_t fingerprint_sample(const IntervalSample& s);

/// Fraction of sample intervals hit by box (Y-indicator mean).
double empirical_hitting(const IntervalSample& s, const Interval& box);

HitCountCache build_hit_cache(const IntervalSample& s,
                              const std::vector<Interval>& nodes);

/// Moment initialization of theta from sample endpoint means, lengths, and
/// the covariance of (A_delta, length). Requires n >= 3 and positive mean
/// length. A non-positive-definite covariance gets its diagonal inflated by
/// 1e-8 * trace.
ThetaParams moment_init(const IntervalSample& s);

/// Gaussian-kernel density with Silverman bandwidth 1.06*sd*n^(-1/5),
/// evaluated on grid.
std::vector<std::pair<double, double>> kde_curve(const std::vector<double>& values,
                                                 const std::vector<double>& grid);

}  // namespace imce
