#include "imce/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace imce {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key);
    }
    if (pos != v.size()) throw std::invalid_argument("config: bad numeric value for " + key);
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key);
    }
    if (pos != v.size()) throw std::invalid_argument("config: bad integer value for " + key);
    return x;
}

}  // namespace

void ContrastConfig::validate() const {
    if (order_x < 2 || order_y < 2 || xi_order < 2) {
        throw std::invalid_argument("config: quadrature orders must be >= 2");
    }
    if (!(weight_c > 0.0)) throw std::invalid_argument("config: weight_c must be > 0");
    if (!(neglect_threshold > 0.0)) {
        throw std::invalid_argument("config: neglect_threshold must be > 0");
    }
    if (optimizer.max_iter < 1 || !(optimizer.diam_tol > 0.0) ||
        !(optimizer.fspread_tol > 0.0)) {
        throw std::invalid_argument("config: optimizer tolerances must be positive");
    }
    if (xi_mc_draws < 2) throw std::invalid_argument("config: xi_mc_draws must be >= 2");
}

ContrastConfig parse_config_text(const std::string& text) {
    ContrastConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: expected 'key = value' at line " +
                                        std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "region") {
            if (val == "auto") {
                cfg.region.reset();
            } else {
                std::istringstream vs(val);
                double xmin, xmax, ymin, ymax;
                if (!(vs >> xmin >> xmax >> ymin >> ymax)) {
                    throw std::invalid_argument(
                        "config: region needs 'auto' or four numbers (line " +
                        std::to_string(lineno) + ")");
                }
                cfg.region = RegionS(xmin, xmax, ymin, ymax);
            }
        } else if (key == "order_x") {
            cfg.order_x = static_cast<int>(to_int(key, val));
        } else if (key == "order_y") {
            cfg.order_y = static_cast<int>(to_int(key, val));
        } else if (key == "xi_order") {
            cfg.xi_order = static_cast<int>(to_int(key, val));
        } else if (key == "weight_c") {
            cfg.weight_c = to_double(key, val);
        } else if (key == "hitting_mode") {
            if (val == "auto") {
                cfg.hitting_mode = HittingMode::kAuto;
            } else if (val == "exact") {
                cfg.hitting_mode = HittingMode::kExact;
            } else if (val == "approx") {
                cfg.hitting_mode = HittingMode::kApprox;
            } else {
                throw std::invalid_argument("config: hitting_mode must be auto|exact|approx");
            }
        } else if (key == "neglect_threshold") {
            cfg.neglect_threshold = to_double(key, val);
        } else if (key == "max_iter") {
            cfg.optimizer.max_iter = static_cast<int>(to_int(key, val));
        } else if (key == "diam_tol") {
            cfg.optimizer.diam_tol = to_double(key, val);
        } else if (key == "fspread_tol") {
            cfg.optimizer.fspread_tol = to_double(key, val);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        } else if (key == "xi_method") {
            if (val == "quadrature") {
                cfg.xi_method = XiMethod::kQuadrature;
            } else if (val == "mc") {
                cfg.xi_method = XiMethod::kMonteCarlo;
            } else {
                throw std::invalid_argument("config: xi_method must be quadrature|mc");
            }
        } else if (key == "xi_mc_draws") {
            cfg.xi_mc_draws = static_cast<std::size_t>(to_int(key, val));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "' at line " +
                                        std::to_string(lineno));
        }
    }
    cfg.validate();
    return cfg;
}

ContrastConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const ContrastConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    if (cfg.region) {
        out << "region = " << cfg.region->x_min << " " << cfg.region->x_max << " "
            << cfg.region->y_min << " " << cfg.region->y_max << "\n";
    } else {
        out << "region = auto\n";
    }
    out << "order_x = " << cfg.order_x << "\n";
    out << "order_y = " << cfg.order_y << "\n";
    out << "xi_order = " << cfg.xi_order << "\n";
    out << "weight_c = " << cfg.weight_c << "\n";
    out << "hitting_mode = "
        << (cfg.hitting_mode == HittingMode::kAuto
                ? "auto"
                : cfg.hitting_mode == HittingMode::kExact ? "exact" : "approx")
        << "\n";
    out << "neglect_threshold = " << cfg.neglect_threshold << "\n";
    out << "max_iter = " << cfg.optimizer.max_iter << "\n";
    out << "diam_tol = " << cfg.optimizer.diam_tol << "\n";
    out << "fspread_tol = " << cfg.optimizer.fspread_tol << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "xi_method = "
        << (cfg.xi_method == XiMethod::kQuadrature ? "quadrature" : "mc") << "\n";
    out << "xi_mc_draws = " << cfg.xi_mc_draws << "\n";
    return out.str();
}

}  // namespace imce
