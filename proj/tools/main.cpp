#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "imce/config.hpp"
#include "imce/contrast.hpp"
#include "imce/empirical.hpp"
#include "imce/estimator.hpp"
#include "imce/io.hpp"
#include "imce/model.hpp"

using json = nlohmann::ordered_json;
using namespace imce;

namespace {

struct ThetaFlags {
    // defaults: the simulation-study ground truth
    double a0 = 1.0, mu = 20.0, s11 = 10.0, s12 = 1.0, s22 = 10.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--a0", a0, "offset a0 of the template interval");
        cmd->add_option("--mu", mu, "mean of the length variable eta");
        cmd->add_option("--s11", s11, "Var(eps)");
        cmd->add_option("--s12", s12, "Cov(eps, eta)");
        cmd->add_option("--s22", s22, "Var(eta)");
    }
    ThetaParams theta() const { return ThetaParams{a0, mu, s11, s12, s22}; }
};

std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << "0x" << std::hex << v;
    return ss.str();
}

std::string mode_name(HittingMode m) {
    switch (m) {
        case HittingMode::kExact: return "exact";
        case HittingMode::kApprox: return "approx";
        default: return "auto";
    }
}

json theta_json(const ThetaParams& t) {
    return json{{"a0", t.a0}, {"mu", t.mu}, {"s11", t.s11}, {"s12", t.s12}, {"s22", t.s22}};
}

json region_json(const RegionS& r) {
    return json{{"x_min", r.x_min}, {"x_max", r.x_max}, {"y_min", r.y_min}, {"y_max", r.y_max}};
}

/// Effective configuration echo: the region is the one actually used.
json config_json(const ContrastConfig& cfg, const RegionS& region) {
    json j;
    j["region"] = region_json(region);
    j["order_x"] = cfg.order_x;
    j["order_y"] = cfg.order_y;
    j["xi_order"] = cfg.xi_order;
    j["weight_c"] = cfg.weight_c;
    j["hitting_mode"] = mode_name(cfg.hitting_mode);
    j["neglect_threshold"] = cfg.neglect_threshold;
    j["max_iter"] = cfg.optimizer.max_iter;
    j["diam_tol"] = cfg.optimizer.diam_tol;
    j["fspread_tol"] = cfg.optimizer.fspread_tol;
    j["seed"] = cfg.seed;
    j["xi_method"] = cfg.xi_method == XiMethod::kQuadrature ? "quadrature" : "mc";
    j["xi_mc_draws"] = cfg.xi_mc_draws;
    return j;
}

json matrix_json(const Matrix5d& m) {
    json rows = json::array();
    for (int i = 0; i < 5; ++i) {
        json row = json::array();
        for (int j = 0; j < 5; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json fit_json(const FitResult& r, std::size_t n) {
    json j;
    j["theta_hat"] = theta_json(r.theta_hat);
    j["contrast_value"] = r.contrast_value;
    j["init"] = theta_json(r.init);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["asym_cov"] = matrix_json(r.asym_cov);
    json se = json::array();
    for (int i = 0; i < 5; ++i) {
        se.push_back(std::sqrt(r.asym_cov(i, i) / static_cast<double>(n)));
    }
    j["theta_se"] = se;
    j["diagnostics"] = json{
        {"region", region_json(r.diagnostics.region)},
        {"order_x", r.diagnostics.order_x},
        {"order_y", r.diagnostics.order_y},
        {"hitting_mode", mode_name(r.diagnostics.hitting_mode)},
        {"simplex_final_diameter", r.diagnostics.simplex_final_diameter},
        {"simplex_final_fspread", r.diagnostics.simplex_final_fspread},
        {"covariance_used_pinv", r.diagnostics.covariance_used_pinv},
        {"null_space_dim", r.diagnostics.null_space_dim}};
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_report(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

/// splitmix64; fixed mixing function for per-replication seed derivation.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t rep) {
    return splitmix64(splitmix64(splitmix64(master) ^ n) ^ rep);
}

ContrastConfig load_config(const std::string& path) {
    return path.empty() ? ContrastConfig{} : parse_config_file(path);
}

// ---------------------------------------------------------------------------

int cmd_simulate(const ThetaFlags& tf, std::size_t n, std::uint64_t seed,
                 const std::string& out) {
    const IntervalSample s = simulate(tf.theta(), n, seed);
    write_interval_csv(out, s);
    std::cout << "wrote " << n << " intervals to " << out << " (seed " << seed << ")\n";
    return 0;
}

int cmd_fit(const std::string& data_path, const std::string& config_path,
            const std::string& out) {
    const IntervalSample s = read_interval_csv(data_path);
    const ContrastConfig cfg = load_config(config_path);
    const FitResult r = fit(s, cfg);

    json j;
    j["command"] = "fit";
    j["input"] = json{{"path", data_path},
                      {"n", s.size()},
                      {"fingerprint", hex64(fingerprint_file(data_path))}};
    j["config"] = config_json(cfg, r.diagnostics.region);
    j["fit"] = fit_json(r, s.size());
    write_report(out, j);
    std::cout << "fit: a0=" << r.theta_hat.a0 << " mu=" << r.theta_hat.mu
              << " s11=" << r.theta_hat.s11 << " s12=" << r.theta_hat.s12
              << " s22=" << r.theta_hat.s22 << (r.converged ? "" : " (not converged)")
              << "\nreport: " << out << "\n";
    return 0;
}

struct RepOutcome {
    ThetaParams theta{};
    bool ok = false;
    std::string error;
};

int cmd_table1(const std::string& config_path, const std::string& out,
               std::uint64_t master_seed, int reps, int jobs) {
    const ContrastConfig cfg = load_config(config_path);
    const ThetaParams truth{1.0, 20.0, 10.0, 1.0, 10.0};
    const std::vector<std::size_t> sizes{100, 200, 300, 400, 500};

    struct Job {
        std::size_t n;
        int rep;
    };
    std::vector<Job> jobs_list;
    for (std::size_t n : sizes) {
        for (int rep = 0; rep < reps; ++rep) jobs_list.push_back({n, rep});
    }
    std::vector<RepOutcome> outcomes(jobs_list.size());

    // fixed-size worker pool; results land at their job index, so output
    // ordering does not depend on scheduling
    std::size_t next = 0;
    std::mutex mtx;
    auto worker = [&]() {
        for (;;) {
            std::size_t idx;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= jobs_list.size()) return;
                idx = next++;
            }
            const Job& job = jobs_list[idx];
            RepOutcome& o = outcomes[idx];
            try {
                const std::uint64_t seed = derive_seed(master_seed, job.n, job.rep);
                const IntervalSample s = simulate(truth, job.n, seed);
                const FitResult r = fit(s, cfg);
                o.theta = r.theta_hat;
                o.ok = true;
            } catch (const std::exception& e) {
                o.error = e.what();
            }
        }
    };
    const int nthreads = jobs > 0 ? jobs
                                  : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv.precision(17);
    csv << "n,bias_a0,ste_a0,bias_mu,ste_mu,bias_sigma_l2,ste_sigma_l2,failures\n";
    int total_failures = 0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        std::vector<ThetaParams> fits;
        int failures = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const RepOutcome& o = outcomes[si * reps + rep];
            if (o.ok) {
                fits.push_back(o.theta);
            } else {
                ++failures;
                std::cerr << "table1: n=" << sizes[si] << " rep=" << rep
                          << " failed: " << o.error << "\n";
            }
        }
        total_failures += failures;
        const double m = static_cast<double>(fits.size());
        auto mean_of = [&](auto get) {
            double acc = 0.0;
            for (const auto& t : fits) acc += get(t);
            return acc / m;
        };
        auto ste_of = [&](auto get, double mean) {
            double acc = 0.0;
            for (const auto& t : fits) acc += (get(t) - mean) * (get(t) - mean);
            return std::sqrt(acc / (m - 1.0));
        };
        const double ma0 = mean_of([](const ThetaParams& t) { return t.a0; });
        const double mmu = mean_of([](const ThetaParams& t) { return t.mu; });
        const double m11 = mean_of([](const ThetaParams& t) { return t.s11; });
        const double m12 = mean_of([](const ThetaParams& t) { return t.s12; });
        const double m22 = mean_of([](const ThetaParams& t) { return t.s22; });
        // Sigma summaries: L2 (spectral) norms of the mean-bias matrix and of
        // the elementwise-ste matrix
        Eigen::Matrix2d bias_m, ste_m;
        bias_m << m11 - truth.s11, m12 - truth.s12, m12 - truth.s12, m22 - truth.s22;
        ste_m << ste_of([](const ThetaParams& t) { return t.s11; }, m11),
            ste_of([](const ThetaParams& t) { return t.s12; }, m12),
            ste_of([](const ThetaParams& t) { return t.s12; }, m12),
            ste_of([](const ThetaParams& t) { return t.s22; }, m22);
        csv << sizes[si] << "," << std::abs(ma0 - truth.a0) << ","
            << ste_of([](const ThetaParams& t) { return t.a0; }, ma0) << ","
            << std::abs(mmu - truth.mu) << ","
            << ste_of([](const ThetaParams& t) { return t.mu; }, mmu) << ","
            << bias_m.operatorNorm() << "," << ste_m.operatorNorm() << ","
            << failures << "\n";
    }
    // provenance trailer so reruns with the embedded settings reproduce the file
    csv << "# master_seed = " << master_seed << ", reps = " << reps << "\n";
    std::string cfg_echo = config_to_text(cfg);
    std::istringstream lines(cfg_echo);
    std::string line;
    while (std::getline(lines, line)) csv << "# " << line << "\n";
    write_text(out, csv.str());
    std::cout << "table: " << out << (total_failures ? " (with failures)" : "") << "\n";
    return total_failures == 0 ? 0 : 1;
}

json density_csv(const std::string& path, const std::vector<double>& values,
                 double fit_mean, double fit_var) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double sd = std::sqrt(fit_var);
    const double lo = *mn - 3.0 * sd, hi = *mx + 3.0 * sd;
    std::vector<double> grid(200);
    for (int i = 0; i < 200; ++i) grid[i] = lo + (hi - lo) * i / 199.0;
    const auto kde = kde_curve(values, grid);
    std::ostringstream csv;
    csv.precision(17);
    csv << "x,kde,fitted\n";
    for (int i = 0; i < 200; ++i) {
        const double z = (grid[i] - fit_mean) / sd;
        const double fitted = std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
        csv << grid[i] << "," << kde[i].second << "," << fitted << "\n";
    }
    write_text(path, csv.str());
    return json{{"path", path}, {"grid_lo", lo}, {"grid_hi", hi}, {"points", 200}};
}

int cmd_analyze(const std::string& data_path, const std::string& config_path,
                const std::string& out_prefix) {
    const IntervalSample s = read_interval_csv(data_path);
    const ContrastConfig cfg = load_config(config_path);
    const FitResult r = fit(s, cfg);
    const ThetaParams& th = r.theta_hat;

    const Interval mean = model_mean(th);
    const double variance = model_variance(th);
    const Interval moment_mean = sample_aumann_mean(s);
    const double corr = th.s12 / std::sqrt(th.s11 * th.s22);
    const CenterLengthLaws laws = center_length_laws(th);

    std::vector<double> centers, lengths;
    centers.reserve(s.size());
    lengths.reserve(s.size());
    for (const auto& x : s.items) {
        centers.push_back(x.center());
        lengths.push_back(x.length());
    }
    const json center_curve = density_csv(out_prefix + "_center_density.csv", centers,
                                          laws.center_mean, laws.center_var);
    const json length_curve = density_csv(out_prefix + "_length_density.csv", lengths,
                                          laws.length_mean, laws.length_var);

    json j;
    j["command"] = "analyze";
    j["input"] = json{{"path", data_path},
                      {"n", s.size()},
                      {"fingerprint", hex64(fingerprint_file(data_path))}};
    j["config"] = config_json(cfg, r.diagnostics.region);
    j["fit"] = fit_json(r, s.size());
    j["mean_interval"] = json{{"lower", mean.lower}, {"upper", mean.upper}};
    j["variance"] = variance;
    j["moment_mean_interval"] =
        json{{"lower", moment_mean.lower}, {"upper", moment_mean.upper}};
    j["eps_eta_correlation"] = corr;
    j["center_length_laws"] = json{{"center_mean", laws.center_mean},
                                   {"center_var", laws.center_var},
                                   {"length_mean", laws.length_mean},
                                   {"length_var", laws.length_var}};
    j["density_curves"] = json{{"center", center_curve}, {"length", length_curve}};
    write_report(out_prefix + "_report.json", j);
    std::cout << "mean = [" << mean.lower << ", " << mean.upper << "], variance = "
              << variance << ", corr(eps,eta) = " << corr << "\nreport: "
              << out_prefix << "_report.json\n";
    return 0;
}

int cmd_hitting(const ThetaFlags& tf, double a, double b) {
    const ThetaParams t = tf.theta();
    const Interval box(a, b);
    std::cout.precision(12);
    std::cout << "exact       = " << hitting_exact(t, box) << "\n";
    try {
        std::cout << "approx      = " << hitting_approx(t, box) << "\n";
    } catch (const std::invalid_argument& e) {
        std::cout << "approx      = invalid (" << e.what() << ")\n";
    }
    std::cout << "conditional = " << hitting_conditional(t, box) << "\n";
    std::cout << "P(eta<0)    = " << t.prob_eta_negative() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal hierarchical random-interval model: simulation and "
                 "minimum contrast estimation"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "draw a seeded sample and write a CSV");
    ThetaFlags sim_theta;
    sim_theta.attach(sim);
    std::size_t sim_n = 100;
    std::uint64_t sim_seed = 0;
    std::string sim_out = "sample.csv";
    sim->add_option("--n", sim_n, "sample size")->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "output CSV path");

    // fit
    auto* fitc = app.add_subcommand("fit", "minimum contrast fit of a CSV sample");
    std::string fit_data, fit_config, fit_out = "fit_report.json";
    fitc->add_option("--data", fit_data, "input lower,upper CSV")->required();
    fitc->add_option("--config", fit_config, "flat key=value config file");
    fitc->add_option("--out", fit_out, "output JSON report path");

    // table1
    auto* tab = app.add_subcommand(
        "table1", "replication study: bias/ste over n in {100..500}");
    std::string tab_config, tab_out = "table1.csv";
    std::uint64_t tab_seed = 20160718;
    int tab_reps = 10, tab_jobs = 0;
    tab->add_option("--config", tab_config, "flat key=value config file");
    tab->add_option("--out", tab_out, "output CSV path");
    tab->add_option("--master-seed", tab_seed, "master seed for replication seeds");
    tab->add_option("--reps", tab_reps, "replications per sample size")
        ->check(CLI::Range(2, 10000));
    tab->add_option("--jobs", tab_jobs, "worker threads (0 = hardware)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "full analysis report with density curves");
    std::string ana_data, ana_config, ana_out = "analysis";
    ana->add_option("--data", ana_data, "input lower,upper CSV")->required();
    ana->add_option("--config", ana_config, "flat key=value config file");
    ana->add_option("--out-prefix", ana_out, "prefix for report and curve files");

    // hitting
    auto* hit = app.add_subcommand("hitting",
                                   "print T([a,b]) exact/approx/conditional side by side");
    ThetaFlags hit_theta;
    hit_theta.attach(hit);
    double hit_a = 25.0, hit_b = 35.0;
    hit->add_option("--a", hit_a, "box lower endpoint");
    hit->add_option("--b", hit_b, "box upper endpoint");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_theta, sim_n, sim_seed, sim_out);
        if (fitc->parsed()) return cmd_fit(fit_data, fit_config, fit_out);
        if (tab->parsed()) return cmd_table1(tab_config, tab_out, tab_seed, tab_reps, tab_jobs);
        if (ana->parsed()) return cmd_analyze(ana_data, ana_config, ana_out);
        if (hit->parsed()) {
            if (hit_a > hit_b) throw std::invalid_argument("need a <= b");
            return cmd_hitting(hit_theta, hit_a, hit_b);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
