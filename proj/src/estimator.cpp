#include "imce/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace imce {

namespace {

constexpr double kBoxBound = 30.0;  // Theta-compactness in u-space
constexpr double kInf = std::numeric_limits<double>::infinity();

RegionS resolved_region(const ContrastConfig& cfg) {
    if (!cfg.region) {
        throw std::invalid_argument("config region must be resolved before covariance");
    }
    return *cfg.region;
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Sample covariance of the moment initializer over 200 parametric
/// replicates of size n drawn at theta (deterministic in seed).
Matrix5d moment_init_bootstrap_cov(const ThetaParams& theta, std::size_t n,
                                   std::uint64_t seed) {
    constexpr int kBoot = 200;
    std::vector<Vector5d> draws;
    draws.reserve(kBoot);
    for (int b = 0; b < kBoot; ++b) {
        const IntervalSample rep = simulate(theta, n, mix_seed(mix_seed(seed) ^ b));
        ThetaParams init;
        try {
            init = moment_init(rep);
        } catch (const std::exception&) {
            continue;
        }
        Vector5d v;
        v << init.a0, init.mu, init.s11, init.s12, init.s22;
        draws.push_back(v);
    }
    if (draws.size() < 2) {
        throw std::runtime_error("fit: initializer bootstrap failed at theta_hat");
    }
    Vector5d mean = Vector5d::Zero();
    for (const auto& v : draws) mean += v;
    mean /= static_cast<double>(draws.size());
    Matrix5d cov = Matrix5d::Zero();
    for (const auto& v : draws) cov += (v - mean) * (v - mean).transpose();
    cov /= static_cast<double>(draws.size() - 1);
    return cov;
}

}  // namespace

Vector5d to_unconstrained(const ThetaParams& theta) {
    theta.require_valid();
    const double l11 = std::sqrt(theta.s11);
    const double l21 = theta.s12 / l11;
    const double rem = theta.s22 - l21 * l21;
    if (!(rem > 0.0)) {
        throw std::invalid_argument("to_unconstrained: Sigma not strictly positive definite");
    }
    Vector5d u;
    u << theta.a0, theta.mu, std::log(l11), l21, 0.5 * std::log(rem);
    return u;
}

ThetaParams to_theta(const Vector5d& u) {
    const double l11 = std::exp(u[2]);
    const double l21 = u[3];
    const double l22 = std::exp(u[4]);
    ThetaParams t;
    t.a0 = u[0];
    t.mu = u[1];
    t.s11 = l11 * l11;
    t.s12 = l11 * l21;
    t.s22 = l21 * l21 + l22 * l22;
    return t;
}

NelderMeadResult nelder_mead(const std::function<double(const Vector5d&)>& f,
                             const Vector5d& x0, const OptimizerConfig& opt) {
    constexpr int kDim = 5;
    constexpr double kAlpha = 1.0, kGamma = 2.0, kBeta = 0.5, kShrink = 0.5;

    std::vector<Vector5d> x(kDim + 1, x0);
    for (int i = 0; i < kDim; ++i) {
        x[i + 1][i] += std::max(0.05 * std::abs(x0[i]), 0.05);
    }
    std::vector<double> fx(kDim + 1);
    for (int i = 0; i <= kDim; ++i) fx[i] = f(x[i]);

    auto order = [&]() {
        for (int i = 1; i <= kDim; ++i) {
            const Vector5d xi = x[i];
            const double fi = fx[i];
            int j = i - 1;
            while (j >= 0 && fx[j] > fi) {
                x[j + 1] = x[j];
                fx[j + 1] = fx[j];
                --j;
            }
            x[j + 1] = xi;
            fx[j + 1] = fi;
        }
    };
    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 1; i <= kDim; ++i) d = std::max(d, (x[i] - x[0]).norm());
        return d;
    };

    order();
    NelderMeadResult res;
    int iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        const double diam = diameter();
        const double spread = fx[kDim] - fx[0];
        if (diam < opt.diam_tol && spread < opt.fspread_tol) {
            res.converged = true;
            break;
        }
        Vector5d centroid = Vector5d::Zero();
        for (int i = 0; i < kDim; ++i) centroid += x[i];
        centroid /= kDim;

        const Vector5d xr = centroid + kAlpha * (centroid - x[kDim]);
        const double fr = f(xr);
        if (fr < fx[0]) {
            const Vector5d xe = centroid + kGamma * (xr - centroid);
            const double fe = f(xe);
            if (fe < fr) {
                x[kDim] = xe;
                fx[kDim] = fe;
            } else {
                x[kDim] = xr;
                fx[kDim] = fr;
            }
        } else if (fr < fx[kDim - 1]) {
            x[kDim] = xr;
            fx[kDim] = fr;
        } else {
            const bool outside = fr < fx[kDim];
            const Vector5d xc = outside ? centroid + kBeta * (xr - centroid)
                                        : centroid + kBeta * (x[kDim] - centroid);
            const double fc = f(xc);
            if ((outside && fc <= fr) || (!outside && fc < fx[kDim])) {
                x[kDim] = xc;
                fx[kDim] = fc;
            } else {
                for (int i = 1; i <= kDim; ++i) {
                    x[i] = x[0] + kShrink * (x[i] - x[0]);
                    fx[i] = f(x[i]);
                }
            }
        }
        order();
    }
    res.x = x[0];
    res.fmin = fx[0];
    res.iterations = iter;
    res.final_diameter = diameter();
    res.final_fspread = fx[kDim] - fx[0];
    return res;
}

FitResult fit(const IntervalSample& s, const ContrastConfig& cfg) {
    cfg.validate();
    if (s.size() < 10) throw std::invalid_argument("fit: need at least 10 observations");

    const ThetaParams init = moment_init(s);
    const RegionS region = cfg.region ? *cfg.region : region_auto(s);
    const QuadratureRule rule = make_rule(region, cfg.order_x, cfg.order_y);
    const HitCountCache cache = build_hit_cache(s, rule.nodes);
    const WeightFn w{cfg.weight_c};

    const double h0 = contrast_H(init, cache, rule, w, cfg.hitting_mode,
                                 cfg.neglect_threshold);
    if (!std::isfinite(h0)) throw std::runtime_error("fit: region/data mismatch");

    auto objective = [&](const Vector5d& u) {
        for (int i = 0; i < 5; ++i) {
            if (std::abs(u[i]) > kBoxBound) return kInf;
        }
        return contrast_H(to_theta(u), cache, rule, w, cfg.hitting_mode,
                          cfg.neglect_threshold);
    };

    const NelderMeadResult nm = nelder_mead(objective, to_unconstrained(init),
                                            cfg.optimizer);

    FitResult result;
    result.theta_hat = to_theta(nm.x);
    result.contrast_value = nm.fmin;
    result.init = init;

    // The contrast can be flat along parameter directions (e.g. when
    // P(eta<0) ~ 0 the hitting function sees Sigma only through
    // Var(eps + a0 eta) and Var(eps + b0 eta)). The simplex endpoint is
    // arbitrary along such directions, so pin them back to the moment
    // initializer, which stays root-n consistent there.
    ContrastConfig rcfg = cfg;
    rcfg.region = region;
    const Matrix5d C = matrix_C(result.theta_hat, rcfg);
    Eigen::SelfAdjointEigenSolver<Matrix5d> ces(C);
    const double clmax = ces.eigenvalues().maxCoeff();
    Matrix5d null_proj = Matrix5d::Zero();
    int null_dim = 0;
    for (int i = 0; i < 5; ++i) {
        if (ces.eigenvalues()[i] < clmax * 1e-12) {
            null_proj += ces.eigenvectors().col(i) * ces.eigenvectors().col(i).transpose();
            ++null_dim;
        }
    }
    if (null_dim > 0) {
        auto as_vec = [](const ThetaParams& t) {
            Vector5d v;
            v << t.a0, t.mu, t.s11, t.s12, t.s22;
            return v;
        };
        auto from_vec = [](const Vector5d& v) {
            return ThetaParams{v[0], v[1], v[2], v[3], v[4]};
        };
        const Vector5d corrected =
            as_vec(result.theta_hat) + null_proj * (as_vec(init) - as_vec(result.theta_hat));
        const ThetaParams pinned = from_vec(corrected);
        if (pinned.valid()) {
            result.theta_hat = pinned;
            result.contrast_value = contrast_H(pinned, cache, rule, w, cfg.hitting_mode,
                                               cfg.neglect_threshold);
        } else {
            null_dim = 0;  // keep the simplex endpoint; no variance substitute
            null_proj.setZero();
        }
    }
    result.diagnostics.null_space_dim = null_dim;

    result.iterations = nm.iterations;
    result.converged = nm.converged;
    result.diagnostics.region = region;
    result.diagnostics.order_x = cfg.order_x;
    result.diagnostics.order_y = cfg.order_y;
    result.diagnostics.hitting_mode = cfg.hitting_mode;
    result.diagnostics.simplex_final_diameter = nm.final_diameter;
    result.diagnostics.simplex_final_fspread = nm.final_fspread;

    const SandwichResult sw = sandwich_cov(result.theta_hat, rcfg);
    result.asym_cov = sw.cov;
    if (null_dim > 0) {
        // per-observation variance of the pinned directions, estimated by a
        // parametric bootstrap of the moment initializer at theta_hat
        const Matrix5d boot = moment_init_bootstrap_cov(result.theta_hat, s.size(),
                                                        cfg.seed);
        const Matrix5d extra = null_proj * boot * null_proj.transpose();
        result.asym_cov += static_cast<double>(s.size()) * 0.5 * (extra + extra.transpose());
    }
    result.diagnostics.covariance_used_pinv = sw.used_pinv;
    return result;
}

Vector5d grad_T(const ThetaParams& theta, const Interval& box, double h,
                HittingMode mode, double neglect_threshold) {
    if (!(h > 0.0)) throw std::invalid_argument("grad_T: step must be positive");
    theta.require_valid();
    Vector5d g;
    std::array<double ThetaParams::*, 5> fields = {
        &ThetaParams::a0, &ThetaParams::mu, &ThetaParams::s11,
        &ThetaParams::s12, &ThetaParams::s22};
    for (int i = 0; i < 5; ++i) {
        double step = h * std::max(1.0, std::abs(theta.*fields[i]));
        for (int attempt = 0;; ++attempt) {
            ThetaParams tp = theta, tm = theta;
            tp.*fields[i] += step;
            tm.*fields[i] -= step;
            if (tp.valid() && tm.valid()) {
                g[i] = (hitting_eval(tp, box, mode, neglect_threshold) -
                        hitting_eval(tm, box, mode, neglect_threshold)) /
                       (2.0 * step);
                break;
            }
            if (attempt >= 1) {
                throw std::runtime_error("grad_T: perturbation exits valid parameter set");
            }
            step *= 0.5;
        }
    }
    return g;
}

double joint_hitting_prob(const ThetaParams& theta, const Interval& box1,
                          const Interval& box2) {
    const double a = std::max(box1.lower, box2.lower);
    const double b = std::min(box1.upper, box2.upper);
    return internal::conditional_hitting_prob(theta, a, b);
}

Matrix5d matrix_C(const ThetaParams& theta, const ContrastConfig& cfg) {
    const RegionS region = resolved_region(cfg);
    const QuadratureRule rule = make_rule(region, cfg.order_x, cfg.order_y);
    Matrix5d C = Matrix5d::Zero();
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const Vector5d g = grad_T(theta, rule.nodes[j], 1e-5, cfg.hitting_mode,
                                  cfg.neglect_threshold);
        C += (2.0 * rule.weights[j] * cfg.weight_c) * (g * g.transpose());
    }
    return C;
}

namespace {

Matrix5d xi_quadrature(const ThetaParams& theta, const ContrastConfig& cfg) {
    const QuadratureRule rule =
        make_rule(resolved_region(cfg), cfg.xi_order, cfg.xi_order);
    const std::size_t m = rule.nodes.size();
    std::vector<double> T(m);
    std::vector<Vector5d> g(m);
    for (std::size_t j = 0; j < m; ++j) {
        T[j] = hitting_eval(theta, rule.nodes[j], cfg.hitting_mode,
                            cfg.neglect_threshold);
        g[j] = grad_T(theta, rule.nodes[j], 1e-5, cfg.hitting_mode,
                      cfg.neglect_threshold);
    }
    const double w2 = cfg.weight_c * cfg.weight_c;
    Matrix5d Xi = Matrix5d::Zero();
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
            const double q =
                joint_hitting_prob(theta, rule.nodes[j], rule.nodes[k]) - T[j] * T[k];
            const double scale = 4.0 * rule.weights[j] * rule.weights[k] * w2 * q;
            const Matrix5d outer = g[j] * g[k].transpose();
            if (k == j) {
                Xi += scale * outer;
            } else {
                Xi += scale * (outer + outer.transpose());
            }
        }
    }
    return 0.5 * (Xi + Xi.transpose());
}

Matrix5d xi_monte_carlo(const ThetaParams& theta, const ContrastConfig& cfg) {
    const QuadratureRule rule =
        make_rule(resolved_region(cfg), cfg.xi_order, cfg.xi_order);
    const std::size_t m = rule.nodes.size();
    std::vector<double> T(m);
    std::vector<Vector5d> g(m);
    for (std::size_t j = 0; j < m; ++j) {
        T[j] = hitting_eval(theta, rule.nodes[j], cfg.hitting_mode,
                            cfg.neglect_threshold);
        g[j] = grad_T(theta, rule.nodes[j], 1e-5, cfg.hitting_mode,
                      cfg.neglect_threshold);
    }
    const IntervalSample draws = simulate(theta, cfg.xi_mc_draws, cfg.seed);
    const std::size_t K = draws.size();
    std::vector<Vector5d> scores(K);
    Vector5d mean = Vector5d::Zero();
    for (std::size_t k = 0; k < K; ++k) {
        Vector5d r = Vector5d::Zero();
        for (std::size_t j = 0; j < m; ++j) {
            const double y = hits(draws.items[k], rule.nodes[j]) ? 1.0 : 0.0;
            r += (2.0 * rule.weights[j] * cfg.weight_c * (T[j] - y)) * g[j];
        }
        scores[k] = r;
        mean += r;
    }
    mean /= static_cast<double>(K);
    Matrix5d Xi = Matrix5d::Zero();
    for (const auto& r : scores) {
        const Vector5d d = r - mean;
        Xi += d * d.transpose();
    }
    Xi /= static_cast<double>(K - 1);
    return 0.5 * (Xi + Xi.transpose());
}

}  // namespace

Matrix5d matrix_Xi(const ThetaParams& theta, const ContrastConfig& cfg) {
    return cfg.xi_method == XiMethod::kQuadrature ? xi_quadrature(theta, cfg)
                                                  : xi_monte_carlo(theta, cfg);
}

SandwichResult sandwich_cov(const ThetaParams& theta, const ContrastConfig& cfg) {
    const Matrix5d C = matrix_C(theta, cfg);
    const Matrix5d Xi = matrix_Xi(theta, cfg);

    Eigen::SelfAdjointEigenSolver<Matrix5d> es(C);
    const auto& lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    const double lmin = lam.minCoeff();

    SandwichResult out;
    out.used_pinv = !(lmin > 0.0 && lmax / lmin < 1e12);
    Matrix5d inv_lam = Matrix5d::Zero();
    for (int i = 0; i < 5; ++i) {
        if (lam[i] > lmax * 1e-14) inv_lam(i, i) = 1.0 / lam[i];
    }
    const Matrix5d Cinv = es.eigenvectors() * inv_lam * es.eigenvectors().transpose();
    const Matrix5d cov = Cinv * Xi * Cinv;
    out.cov = 0.5 * (cov + cov.transpose());
    return out;
}

}  // namespace imce
