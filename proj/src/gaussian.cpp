#include "imce/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imce {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    if (std::isnan(x)) throw std::invalid_argument("std_normal_cdf: NaN input");
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

namespace {

// 20-point Gauss-Legendre rule on [-1,1], positive half (used symmetrically).
constexpr int kGL = 10;
constexpr double kGLx[kGL] = {
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
    0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
    0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
    0.07652652113349733};
constexpr double kGLw[kGL] = {
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
    0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
    0.1316886384491766,  0.1420961093183819,  0.1491729864726037,
    0.1527533871307258};

// Upper-tail bivariate probability P(Z1 > dh, Z2 > dk), correlation r.
// Genz's refinement of Drezner-Wesolowsky: Gauss-Legendre over the
// correlation integral for |r| < 0.925, tail expansion otherwise.
double bvnu(double dh, double dk, double r) {
    double h = dh, k = dk;
    double hk = h * k;
    double bvn = 0.0;
    if (std::abs(r) < 0.925) {
        if (r != 0.0) {
            const double hs = 0.5 * (h * h + k * k);
            const double asr = std::asin(r);
            for (int i = 0; i < kGL; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double sn = std::sin(0.5 * asr * (is * kGLx[i] + 1.0));
                    bvn += kGLw[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn *= asr / (4.0 * kPi);
        }
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k);
    } else {
        if (r < 0.0) {
            k = -k;
            hk = -hk;
        }
        if (std::abs(r) < 1.0) {
            const double as = (1.0 - r) * (1.0 + r);
            double a = std::sqrt(as);
            const double bs = (h - k) * (h - k);
            const double c = (4.0 - hk) / 8.0;
            const double d = (12.0 - hk) / 16.0;
            double asr = -0.5 * (bs / as + hk);
            if (asr > -100.0) {
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 +
                       c * d * as * as / 5.0);
            }
            if (-hk < 100.0) {
                const double b = std::sqrt(bs);
                bvn -= std::exp(-0.5 * hk) * std::sqrt(kTwoPi) *
                       std_normal_cdf(-b / a) * b *
                       (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a *= 0.5;
            for (int i = 0; i < kGL; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double x = a * (is * kGLx[i] + 1.0);
                    const double xs = x * x;
                    const double rs = std::sqrt(1.0 - xs);
                    asr = -0.5 * (bs / xs + hk);
                    if (asr > -100.0) {
                        bvn += a * kGLw[i] * std::exp(asr) *
                               (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                                (1.0 + c * xs * (1.0 + d * xs)));
                    }
                }
            }
            bvn = -bvn / kTwoPi;
        }
        if (r > 0.0) {
            bvn += std_normal_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) {
                if (h < 0.0) {
                    bvn += std_normal_cdf(k) - std_normal_cdf(h);
                } else {
                    bvn += std_normal_cdf(-h) - std_normal_cdf(-k);
                }
            }
        }
    }
    return bvn;
}

}  // namespace

double bvn_cdf(double h, double k, double rho) {
    if (std::isnan(h) || std::isnan(k) || std::isnan(rho)) {
        throw std::invalid_argument("bvn_cdf: NaN input");
    }
    if (rho < -1.0 || rho > 1.0) {
        throw std::invalid_argument("bvn_cdf: rho outside [-1,1]");
    }
    if (rho == 1.0) return std_normal_cdf(std::min(h, k));
    if (rho == -1.0) {
        return clamp01(std_normal_cdf(h) + std_normal_cdf(k) - 1.0);
    }
    return clamp01(bvnu(-h, -k, rho));
}

double affine_bvn_cdf(double x1, double x2, const BvnSpec& spec) {
    const double v11 = spec.v11, v12 = spec.v12, v22 = spec.v22;
    if (v11 < 0.0 || v22 < 0.0) {
        throw std::invalid_argument("affine_bvn_cdf: negative variance");
    }
    const double m1 = spec.mean[0], m2 = spec.mean[1];
    // Degenerate coordinates collapse to indicators.
    if (v11 == 0.0 && v22 == 0.0) {
        return (m1 <= x1 && m2 <= x2) ? 1.0 : 0.0;
    }
    if (v11 == 0.0) {
        return (m1 <= x1) ? std_normal_cdf((x2 - m2) / std::sqrt(v22)) : 0.0;
    }
    if (v22 == 0.0) {
        return (m2 <= x2) ? std_normal_cdf((x1 - m1) / std::sqrt(v11)) : 0.0;
    }
    const double s1 = std::sqrt(v11), s2 = std::sqrt(v22);
    double rho = v12 / (s1 * s2);
    if (rho < -1.0 || rho > 1.0) {
        // Round-off on exactly degenerate transforms.
        if (std::abs(rho) > 1.0 + 1e-12) {
            throw std::invalid_argument("affine_bvn_cdf: covariance not PSD");
        }
        rho = std::clamp(rho, -1.0, 1.0);
    }
    return bvn_cdf((x1 - m1) / s1, (x2 - m2) / s2, rho);
}

TruncMoments trunc_moments(double mu, double sigma2) {
    if (sigma2 < 0.0) throw std::invalid_argument("trunc_moments: sigma2 < 0");
    TruncMoments m{};
    if (sigma2 == 0.0) {
        // Point mass at mu; eta_plus carries it when mu >= 0.
        if (mu >= 0.0) {
            m.Ep = mu;
            m.Ep2 = mu * mu;
        } else {
            m.Em = mu;
            m.Em2 = mu * mu;
        }
        m.Vp = m.Ep2 - m.Ep * m.Ep;
        m.Vm = m.Em2 - m.Em * m.Em;
        return m;
    }
    const double sigma = std::sqrt(sigma2);
    const double z = mu / sigma;
    const double Phi = std_normal_cdf(z);
    const double phi = std_normal_pdf(z);
    m.Ep = mu * Phi + sigma * phi;
    m.Em = mu * std_normal_cdf(-z) - sigma * phi;
    m.Ep2 = (mu * mu + sigma2) * Phi + mu * sigma * phi;
    m.Em2 = (mu * mu + sigma2) - m.Ep2;
    m.Vp = m.Ep2 - m.Ep * m.Ep;
    m.Vm = m.Em2 - m.Em * m.Em;
    return m;
}

}  // namespace imce
