#include "imce/empirical.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace imce {

namespace {

std::uint64_t fnv1a(std::uint64_t h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

}  // namespace

std::uint64_t fingerprint_nodes(const std::vector<Interval>& nodes) {
    std::uint64_t h = kFnvOffset;
    for (const auto& x : nodes) h = fnv1a(fnv1a(h, x.lower), x.upper);
    return h;
}

std::uint64_t fingerprint_sample(const IntervalSample& s) {
    std::uint64_t h = kFnvOffset;
    for (const auto& x : s.items) h = fnv1a(fnv1a(h, x.lower), x.upper);
    return h;
}

double empirical_hitting(const IntervalSample& s, const Interval& box) {
    if (s.empty()) throw std::invalid_argument("empirical_hitting: empty sample");
    std::size_t count = 0;
    for (const auto& x : s.items) count += hits(x, box) ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(s.size());
}

HitCountCache build_hit_cache(const IntervalSample& s,
                              const std::vector<Interval>& nodes) {
    if (s.empty()) throw std::invalid_argument("build_hit_cache: empty sample");
    HitCountCache cache;
    cache.nodes = nodes;
    cache.counts.reserve(nodes.size());
    cache.n = s.size();
    for (const auto& node : nodes) {
        std::size_t count = 0;
        for (const auto& x : s.items) count += hits(x, node) ? 1 : 0;
        cache.counts.push_back(static_cast<double>(count));
    }
    cache.sample_fingerprint = fingerprint_sample(s);
    cache.nodes_fingerprint = fingerprint_nodes(nodes);
    return cache;
}

ThetaParams moment_init(const IntervalSample& s) {
    const std::size_t n = s.size();
    if (n < 3) throw std::invalid_argument("moment_init: need at least 3 items");
    double mean_l = 0.0, mean_u = 0.0;
    for (const auto& x : s.items) {
        mean_l += x.lower;
        mean_u += x.upper;
    }
    mean_l /= static_cast<double>(n);
    mean_u /= static_cast<double>(n);
    const double mu_tilde = mean_u - mean_l;
    if (!(mu_tilde > 0.0)) throw std::invalid_argument("moment_init: degenerate lengths");
    const double a0_tilde = mean_l / mu_tilde;

    // A_delta_i = center_i - (a0+1/2)*length_i proxies eps_i; lengths proxy eta_i.
    std::vector<double> delta(n), len(n);
    double md = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        len[i] = s.items[i].length();
        delta[i] = s.items[i].center() - (a0_tilde + 0.5) * len[i];
        md += delta[i];
        ml += len[i];
    }
    md /= static_cast<double>(n);
    ml /= static_cast<double>(n);
    double sdd = 0.0, sdl = 0.0, sll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sdd += (delta[i] - md) * (delta[i] - md);
        sdl += (delta[i] - md) * (len[i] - ml);
        sll += (len[i] - ml) * (len[i] - ml);
    }
    const double denom = static_cast<double>(n) - 1.0;
    ThetaParams theta;
    theta.a0 = a0_tilde;
    theta.mu = mu_tilde;
    theta.s11 = sdd / denom;
    theta.s12 = sdl / denom;
    theta.s22 = sll / denom;
    if (!theta.valid()) {
        const double bump = 1e-8 * (theta.s11 + theta.s22);
        theta.s11 += bump > 0.0 ? bump : 1e-8;
        theta.s22 += bump > 0.0 ? bump : 1e-8;
    }
    if (!theta.valid()) {
        // Still rank-deficient (e.g. perfectly correlated inputs).
        const double bump = 1e-6 * (theta.s11 + theta.s22) + 1e-12;
        theta.s11 += bump;
        theta.s22 += bump;
    }
    return theta;
}

std::vector<std::pair<double, double>> kde_curve(const std::vector<double>& values,
                                                 const std::vector<double>& grid) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("kde_curve: need at least 2 values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
    if (!(sd > 0.0)) throw std::invalid_argument("kde_curve: zero variance input");
    const double bw = 1.06 * sd * std::pow(static_cast<double>(n), -0.2);

    constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (double x : grid) {
        double dens = 0.0;
        for (double v : values) {
            const double z = (x - v) / bw;
            dens += std::exp(-0.5 * z * z);
        }
        dens *= kInvSqrt2Pi / (bw * static_cast<double>(n));
        curve.emplace_back(x, dens);
    }
    return curve;
}

}  // namespace imce
