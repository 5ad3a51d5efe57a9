#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "imce/contrast.hpp"
#include "imce/model.hpp"

namespace imce {

struct OptimizerConfig {
    int max_iter = 2000;
    double diam_tol = 1e-8;
    double fspread_tol = 1e-12;
};

enum class XiMethod { kQuadrature, kMonteCarlo };

/// Run configuration for contrast fitting and covariance estimation.
struct ContrastConfig {
    std::optional<RegionS> region;  ///< empty = rule-of-thumb from data
    int order_x = 24;
    int order_y = 24;
    int xi_order = 12;
    double weight_c = 1.0;
    HittingMode hitting_mode = HittingMode::kAuto;
    double neglect_threshold = 1e-8;
    OptimizerConfig optimizer;
    std::uint64_t seed = 0;
    XiMethod xi_method = XiMethod::kQuadrature;
    std::size_t xi_mc_draws = 100000;

    void validate() const;
};

/// Parses a flat key-value config file (key = value, '#' comments).
/// Unknown keys are errors.
ContrastConfig parse_config_file(const std::string& path);
ContrastConfig parse_config_text(const std::string& text);

/// Serializes the effective configuration back to the flat key-value form.
std::string config_to_text(const ContrastConfig& cfg);

}  // namespace imce
