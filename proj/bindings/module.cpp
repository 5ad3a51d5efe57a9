#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "imce/config.hpp"
#include "imce/contrast.hpp"
#include "imce/empirical.hpp"
#include "imce/estimator.hpp"
#include "imce/io.hpp"
#include "imce/model.hpp"

namespace py = pybind11;
using namespace imce;

namespace {

std::vector<std::vector<double>> matrix_to_lists(const Matrix5d& m) {
    std::vector<std::vector<double>> out(5, std::vector<double>(5));
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) out[i][j] = m(i, j);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_imce, m) {
    m.doc() = "Normal hierarchical random-interval model and its minimum "
              "contrast estimator";

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lower"), py::arg("upper"))
        .def_readonly("lower", &Interval::lower)
        .def_readonly("upper", &Interval::upper)
        .def("center", &Interval::center)
        .def("radius", &Interval::radius)
        .def("length", &Interval::length)
        .def("__repr__", [](const Interval& x) {
            return "Interval(" + std::to_string(x.lower) + ", " +
                   std::to_string(x.upper) + ")";
        })
        .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; });

    py::class_<IntervalSample>(m, "IntervalSample")
        .def(py::init<>())
        .def_readwrite("items", &IntervalSample::items)
        .def_readonly("provenance", &IntervalSample::provenance)
        .def("__len__", &IntervalSample::size);

    py::class_<ThetaParams>(m, "ThetaParams")
        .def(py::init([](double a0, double mu, double s11, double s12, double s22) {
                 return ThetaParams{a0, mu, s11, s12, s22};
             }),
             py::arg("a0"), py::arg("mu"), py::arg("s11"), py::arg("s12"),
             py::arg("s22"))
        .def_readwrite("a0", &ThetaParams::a0)
        .def_readwrite("mu", &ThetaParams::mu)
        .def_readwrite("s11", &ThetaParams::s11)
        .def_readwrite("s12", &ThetaParams::s12)
        .def_readwrite("s22", &ThetaParams::s22)
        .def("b0", &ThetaParams::b0)
        .def("valid", &ThetaParams::valid)
        .def("prob_eta_negative", &ThetaParams::prob_eta_negative)
        .def("__repr__", [](const ThetaParams& t) {
            return "ThetaParams(a0=" + std::to_string(t.a0) +
                   ", mu=" + std::to_string(t.mu) + ", s11=" + std::to_string(t.s11) +
                   ", s12=" + std::to_string(t.s12) +
                   ", s22=" + std::to_string(t.s22) + ")";
        });

    py::class_<RegionS>(m, "RegionS")
        .def(py::init<double, double, double, double>(), py::arg("x_min"),
             py::arg("x_max"), py::arg("y_min"), py::arg("y_max"))
        .def_readonly("x_min", &RegionS::x_min)
        .def_readonly("x_max", &RegionS::x_max)
        .def_readonly("y_min", &RegionS::y_min)
        .def_readonly("y_max", &RegionS::y_max);

    py::enum_<HittingMode>(m, "HittingMode")
        .value("AUTO", HittingMode::kAuto)
        .value("EXACT", HittingMode::kExact)
        .value("APPROX", HittingMode::kApprox);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("max_iter", &OptimizerConfig::max_iter)
        .def_readwrite("diam_tol", &OptimizerConfig::diam_tol)
        .def_readwrite("fspread_tol", &OptimizerConfig::fspread_tol);

    py::class_<ContrastConfig>(m, "ContrastConfig")
        .def(py::init<>())
        .def_readwrite("region", &ContrastConfig::region)
        .def_readwrite("order_x", &ContrastConfig::order_x)
        .def_readwrite("order_y", &ContrastConfig::order_y)
        .def_readwrite("xi_order", &ContrastConfig::xi_order)
        .def_readwrite("weight_c", &ContrastConfig::weight_c)
        .def_readwrite("hitting_mode", &ContrastConfig::hitting_mode)
        .def_readwrite("neglect_threshold", &ContrastConfig::neglect_threshold)
        .def_readwrite("optimizer", &ContrastConfig::optimizer)
        .def_readwrite("seed", &ContrastConfig::seed);

    py::class_<FitDiagnostics>(m, "FitDiagnostics")
        .def_readonly("region", &FitDiagnostics::region)
        .def_readonly("order_x", &FitDiagnostics::order_x)
        .def_readonly("order_y", &FitDiagnostics::order_y)
        .def_readonly("hitting_mode", &FitDiagnostics::hitting_mode)
        .def_readonly("simplex_final_diameter", &FitDiagnostics::simplex_final_diameter)
        .def_readonly("simplex_final_fspread", &FitDiagnostics::simplex_final_fspread)
        .def_readonly("covariance_used_pinv", &FitDiagnostics::covariance_used_pinv)
        .def_readonly("null_space_dim", &FitDiagnostics::null_space_dim);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("theta_hat", &FitResult::theta_hat)
        .def_readonly("contrast_value", &FitResult::contrast_value)
        .def_readonly("init", &FitResult::init)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("diagnostics", &FitResult::diagnostics)
        .def_property_readonly("asym_cov", [](const FitResult& r) {
            return matrix_to_lists(r.asym_cov);
        });

    py::class_<CenterLengthLaws>(m, "CenterLengthLaws")
        .def_readonly("center_mean", &CenterLengthLaws::center_mean)
        .def_readonly("center_var", &CenterLengthLaws::center_var)
        .def_readonly("length_mean", &CenterLengthLaws::length_mean)
        .def_readonly("length_var", &CenterLengthLaws::length_var);

    m.def("simulate", &simulate, py::arg("theta"), py::arg("n"), py::arg("seed"));
    m.def("hits", &hits, py::arg("x"), py::arg("box"));
    m.def("hitting_exact", &hitting_exact, py::arg("theta"), py::arg("box"));
    m.def("hitting_approx", &hitting_approx, py::arg("theta"), py::arg("box"),
          py::arg("neglect_threshold") = 1e-8);
    m.def("hitting_conditional", &hitting_conditional, py::arg("theta"), py::arg("box"));
    m.def("hitting_auto", &hitting_auto, py::arg("theta"), py::arg("box"),
          py::arg("neglect_threshold") = 1e-8);
    m.def("model_mean", &model_mean, py::arg("theta"));
    m.def("model_variance", &model_variance, py::arg("theta"));
    m.def("center_length_laws", &center_length_laws, py::arg("theta"));
    m.def("sample_aumann_mean", &sample_aumann_mean, py::arg("sample"));
    m.def("sample_variance", &sample_variance, py::arg("sample"));
    m.def("empirical_hitting", &empirical_hitting, py::arg("sample"), py::arg("box"));
    m.def("moment_init", &moment_init, py::arg("sample"));
    m.def("region_auto", &region_auto, py::arg("sample"));
    m.def("fit", &fit, py::arg("sample"), py::arg("config") = ContrastConfig{});
    m.def("read_interval_csv", &read_interval_csv, py::arg("path"));
    m.def("write_interval_csv", &write_interval_csv, py::arg("path"), py::arg("sample"));
}
