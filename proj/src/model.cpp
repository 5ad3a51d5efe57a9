#include "imce/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "imce/gaussian.hpp"
#include "imce/quadrature.hpp"

namespace imce {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Chol2 {
    double l11, l21, l22;
};

Chol2 cholesky2(const ThetaParams& t) {
    const double l11 = std::sqrt(t.s11);
    const double l21 = t.s12 / l11;
    const double rem = std::max(t.s22 - l21 * l21, 0.0);
    return {l11, l21, std::sqrt(rem)};
}

}  // namespace

void ThetaParams::require_valid() const {
    if (!valid()) {
        throw std::invalid_argument(
            "ThetaParams: Sigma must be positive semidefinite with s11, s22 > 0");
    }
}

double ThetaParams::prob_eta_negative() const {
    return std_normal_cdf(-mu / std::sqrt(s22));
}

IntervalSample simulate(const ThetaParams& theta, std::size_t n, std::uint64_t seed) {
    theta.require_valid();
    if (n == 0) throw std::invalid_argument("simulate: n must be >= 1");
    // Box-Muller on explicitly constructed uniforms keeps the stream
    // identical across standard library implementations.
    std::mt19937_64 gen(seed);
    auto uniform = [&gen]() {
        return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    };
    const Chol2 L = cholesky2(theta);
    IntervalSample s;
    s.items.reserve(n);
    s.provenance = "seed:" + std::to_string(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double z1 = r * std::cos(kTwoPi * u2);
        const double z2 = r * std::sin(kTwoPi * u2);
        const double eps = L.l11 * z1;
        const double eta = theta.mu + L.l21 * z1 + L.l22 * z2;
        const double e1 = eps + theta.a0 * eta;
        const double e2 = eps + theta.b0() * eta;
        if (eta >= 0.0) {
            s.items.emplace_back(e1, e2);
        } else {
            s.items.emplace_back(e2, e1);
        }
    }
    return s;
}

namespace {

// One term of the four-term hitting expression: P(D [eps,eta]' <= x) for
// D = [[1, c], [0, e]] with e = +-1, evaluated at x = (x1, 0).
double quadrant_term(const ThetaParams& t, double c, double e, double x1) {
    BvnSpec spec;
    spec.mean = {c * t.mu, e * t.mu};
    spec.v11 = t.s11 + 2.0 * c * t.s12 + c * c * t.s22;
    spec.v12 = e * (t.s12 + c * t.s22);
    spec.v22 = t.s22;
    return affine_bvn_cdf(x1, 0.0, spec);
}

}  // namespace

double hitting_exact(const ThetaParams& theta, const Interval& box) {
    theta.require_valid();
    const double a = box.lower, b = box.upper;
    const double a0 = theta.a0, b0 = theta.b0();
    const double T = quadrant_term(theta, a0, -1.0, b) -
                     quadrant_term(theta, b0, -1.0, a) +
                     quadrant_term(theta, b0, 1.0, b) -
                     quadrant_term(theta, a0, 1.0, a);
    return std::clamp(T, 0.0, 1.0);
}

double hitting_approx(const ThetaParams& theta, const Interval& box,
                      double neglect_threshold) {
    theta.require_valid();
    if (theta.prob_eta_negative() >= neglect_threshold) {
        throw std::invalid_argument(
            "hitting_approx: approximation invalid: P(eta<0) too large");
    }
    const double a0 = theta.a0, b0 = theta.b0();
    BvnSpec spec;
    spec.mean = {a0 * theta.mu, -b0 * theta.mu};
    spec.v11 = theta.s11 + 2.0 * a0 * theta.s12 + a0 * a0 * theta.s22;
    spec.v22 = theta.s11 + 2.0 * b0 * theta.s12 + b0 * b0 * theta.s22;
    spec.v12 = -(theta.s11 + (a0 + b0) * theta.s12 + a0 * b0 * theta.s22);
    const double T = affine_bvn_cdf(box.upper, -box.lower, spec);
    return std::clamp(T, 0.0, 1.0);
}

double hitting_auto(const ThetaParams& theta, const Interval& box,
                    double neglect_threshold) {
    if (theta.prob_eta_negative() < neglect_threshold) {
        return hitting_approx(theta, box, neglect_threshold);
    }
    return hitting_exact(theta, box);
}

double hitting_eval(const ThetaParams& theta, const Interval& box,
                    HittingMode mode, double neglect_threshold) {
    switch (mode) {
        case HittingMode::kExact:
            return hitting_exact(theta, box);
        case HittingMode::kApprox:
            return hitting_approx(theta, box, neglect_threshold);
        case HittingMode::kAuto:
        default:
            return hitting_auto(theta, box, neglect_threshold);
    }
}

namespace internal {

// P(a - eta*b0 <= eps <= b - eta*a0, eta >= 0)
//   + P(a - eta*a0 <= eps <= b - eta*b0, eta < 0),
// allowing a > b (the clamp then matters), via the conditional law of eps
// given eta. Shared by hitting_conditional and the joint hitting probability.
double conditional_hitting_prob(const ThetaParams& t, double a, double b) {
    t.require_valid();
    const double sd_eta = std::sqrt(t.s22);
    const double slope = t.s12 / t.s22;
    const double cond_var = t.s11 - t.s12 * t.s12 / t.s22;
    const double cond_sd = cond_var > 0.0 ? std::sqrt(cond_var) : 0.0;
    const double a0 = t.a0, b0 = t.b0();

    auto cond_cdf = [&](double x, double eta_t) {
        const double m = slope * (eta_t - t.mu);
        if (cond_sd == 0.0) return x >= m ? 1.0 : 0.0;
        return std_normal_cdf((x - m) / cond_sd);
    };
    auto density = [&](double eta_t) {
        return std_normal_pdf((eta_t - t.mu) / sd_eta) / sd_eta;
    };

    const double span = 10.0 * sd_eta;
    const double lo_all = t.mu - span, hi_all = t.mu + span;
    constexpr double kTol = 5e-10;
    double total = 0.0;

    // eta >= 0 branch: integrand positive exactly for eta_t > a - b.
    {
        const double lo = std::max({0.0, a - b, lo_all});
        const double hi = hi_all;
        if (lo < hi) {
            total += adaptive_simpson(
                [&](double eta_t) {
                    const double p =
                        cond_cdf(b - a0 * eta_t, eta_t) - cond_cdf(a - b0 * eta_t, eta_t);
                    return p > 0.0 ? density(eta_t) * p : 0.0;
                },
                lo, hi, kTol);
        }
    }
    // eta < 0 branch: integrand positive exactly for eta_t < b - a.
    {
        const double lo = lo_all;
        const double hi = std::min({0.0, b - a, hi_all});
        if (lo < hi) {
            total += adaptive_simpson(
                [&](double eta_t) {
                    const double p =
                        cond_cdf(b - b0 * eta_t, eta_t) - cond_cdf(a - a0 * eta_t, eta_t);
                    return p > 0.0 ? density(eta_t) * p : 0.0;
                },
                lo, hi, kTol);
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace internal

double hitting_conditional(const ThetaParams& theta, const Interval& box) {
    return internal::conditional_hitting_prob(theta, box.lower, box.upper);
}

Interval model_mean(const ThetaParams& theta) {
    theta.require_valid();
    const TruncMoments m = trunc_moments(theta.mu, theta.s22);
    const double a0 = theta.a0, b0 = theta.b0();
    return Interval(a0 * m.Ep + b0 * m.Em, b0 * m.Ep + a0 * m.Em);
}

double model_variance(const ThetaParams& theta) {
    theta.require_valid();
    const TruncMoments m = trunc_moments(theta.mu, theta.s22);
    const double a0 = theta.a0, b0 = theta.b0();
    return theta.s11 + 0.5 * (a0 * a0 + b0 * b0) * (m.Vp + m.Vm) +
           (a0 + b0) * theta.s12 - 2.0 * a0 * b0 * m.Ep * m.Em;
}

CenterLengthLaws center_length_laws(const ThetaParams& theta) {
    theta.require_valid();
    const double ac = theta.a0 + 0.5;
    return CenterLengthLaws{
        .center_mean = ac * theta.mu,
        .center_var = theta.s11 + ac * ac * theta.s22 + (2.0 * theta.a0 + 1.0) * theta.s12,
        .length_mean = theta.mu,
        .length_var = theta.s22,
    };
}

}  // namespace imce
