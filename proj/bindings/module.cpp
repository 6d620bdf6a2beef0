#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tha/attack.hpp"
#include "tha/fock.hpp"
#include "tha/gaussian.hpp"
#include "tha/keyrate.hpp"
#include "tha/separable.hpp"
#include "tha/shutter.hpp"

namespace py = pybind11;
using namespace tha;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Trojan-horse attack analysis for QKD: Gaussian states, Fock "
              "oracle, key rates, separable bounds and the shutter defense";

    // ---- gaussian states ----
    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<std::size_t, Vec, Mat>(), py::arg("n_modes"), py::arg("mean"),
             py::arg("cov"))
        .def_property_readonly("n_modes", &GaussianState::n_modes)
        .def_property_readonly("mean", &GaussianState::mean)
        .def_property_readonly("cov", &GaussianState::cov)
        .def("physicality_margin", &GaussianState::physicality_margin)
        .def("is_physical", &GaussianState::is_physical, py::arg("tol") = 1e-9)
        .def("debug_string", &GaussianState::debug_string);

    m.def("vacuum", &vacuum, py::arg("n_modes"));
    m.def("symplectic_form", &symplectic_form, py::arg("n_modes"));
    m.def("displace", &displace, py::arg("state"), py::arg("mode"), py::arg("alpha"));
    m.def("phase_rotate", &phase_rotate, py::arg("state"), py::arg("mode"), py::arg("theta"));
    m.def("two_mode_squeeze", &two_mode_squeeze, py::arg("state"), py::arg("mode_i"),
          py::arg("mode_j"), py::arg("xi"));
    m.def("pure_loss", &pure_loss, py::arg("state"), py::arg("mode"), py::arg("eta"));
    m.def("add_thermal_additive", &add_thermal_additive, py::arg("state"), py::arg("mode"),
          py::arg("mu_t"));
    m.def("add_thermal_tms", &add_thermal_tms, py::arg("state"), py::arg("mode"), py::arg("mu_t"));
    m.def("partial_trace", &partial_trace, py::arg("state"), py::arg("keep"));
    m.def("mean_photons", &mean_photons, py::arg("state"), py::arg("mode"));
    m.def("fidelity", &fidelity, py::arg("state1"), py::arg("state2"));

    // ---- Fock oracle ----
    py::enum_<Generator>(m, "Generator")
        .value("Phase", Generator::Phase)
        .value("Displacement", Generator::Displacement)
        .value("TwoModeSqueeze", Generator::TwoModeSqueeze);

    py::class_<FockDensityMatrix>(m, "FockDensityMatrix")
        .def(py::init<std::size_t, std::size_t, CMat>(), py::arg("cutoff"), py::arg("n_modes"),
             py::arg("entries"))
        .def_property_readonly("cutoff", &FockDensityMatrix::cutoff)
        .def_property_readonly("n_modes", &FockDensityMatrix::n_modes)
        .def_property_readonly("entries", &FockDensityMatrix::entries)
        .def_property_readonly("leakage", &FockDensityMatrix::leakage)
        .def("debug_string", &FockDensityMatrix::debug_string);

    py::class_<PhotonStatistics>(m, "PhotonStatistics")
        .def_readonly("mean", &PhotonStatistics::mean)
        .def_readonly("variance_v", &PhotonStatistics::variance_v)
        .def_readonly("diagonal", &PhotonStatistics::diagonal);

    m.def("fock_vacuum", &fock_vacuum, py::arg("cutoff"), py::arg("n_modes") = 1);
    m.def("coherent_fock", &coherent_fock, py::arg("alpha"), py::arg("cutoff") = 30);
    m.def("apply_unitary_generator", &apply_unitary_generator, py::arg("rho"), py::arg("generator"),
          py::arg("parameter"), py::arg("mode") = 0);
    m.def("attenuate_kraus", &attenuate_kraus, py::arg("rho"), py::arg("eta"), py::arg("mode") = 0);
    m.def("amplify_kraus", &amplify_kraus, py::arg("rho"), py::arg("gain"), py::arg("mode") = 0);
    m.def("add_thermal_fock", &add_thermal_fock, py::arg("rho"), py::arg("mu"), py::arg("mode") = 0);
    m.def("tmsv_fock", &tmsv_fock, py::arg("xi"), py::arg("cutoff") = 20);
    m.def("partial_trace_fock", &partial_trace_fock, py::arg("rho"), py::arg("keep_mode"));
    m.def("uhlmann_fidelity", &uhlmann_fidelity, py::arg("rho1"), py::arg("rho2"));
    m.def("photon_statistics", &photon_statistics, py::arg("rho"));

    // ---- attack states ----
    py::class_<AttackConfig>(m, "AttackConfig")
        .def(py::init([](double n, double p, double phi, double eta, double mu_t) {
                 AttackConfig c{n, p, phi, eta, mu_t};
                 c.validate();
                 return c;
             }),
             py::arg("budget_n"), py::arg("squeeze_fraction") = 0.0, py::arg("phi") = 0.0,
             py::arg("eta") = 1e-7, py::arg("mu_t") = 0.0)
        .def_readwrite("budget_n", &AttackConfig::budget_n)
        .def_readwrite("squeeze_fraction", &AttackConfig::squeeze_fraction)
        .def_readwrite("phi", &AttackConfig::phi)
        .def_readwrite("eta", &AttackConfig::eta)
        .def_readwrite("mu_t", &AttackConfig::mu_t)
        .def("omega", &AttackConfig::omega)
        .def("xi_e", &AttackConfig::xi_e)
        .def("mu_d", &AttackConfig::mu_d);

    py::enum_<PairVariant>(m, "PairVariant")
        .value("Physical", PairVariant::Physical)
        .value("PaperExact", PairVariant::PaperExact);
    py::enum_<NoiseModel>(m, "NoiseModel")
        .value("Additive", NoiseModel::Additive)
        .value("Tms", NoiseModel::Tms);

    py::class_<ReturnedPair>(m, "ReturnedPair")
        .def_readonly("state_0", &ReturnedPair::state_0)
        .def_readonly("state_quarter", &ReturnedPair::state_quarter);

    py::class_<OptimalP>(m, "OptimalP")
        .def_readonly("p_star", &OptimalP::p_star)
        .def_readonly("fidelity_at_star", &OptimalP::fidelity_at_star)
        .def_readonly("grid_argmin", &OptimalP::grid_argmin);

    py::class_<BudgetAudit>(m, "BudgetAudit")
        .def_readonly("signal_photons", &BudgetAudit::signal_photons)
        .def_readonly("squeeze_photons", &BudgetAudit::squeeze_photons)
        .def_readonly("displacement_photons", &BudgetAudit::displacement_photons)
        .def_readonly("nominal_budget", &BudgetAudit::nominal_budget)
        .def_readonly("omega_matches_budget", &BudgetAudit::omega_matches_budget);

    m.def("build_returned_pair", &build_returned_pair, py::arg("config"), py::arg("variant"),
          py::arg("noise") = NoiseModel::Additive);
    m.def("closed_form_fidelity", &closed_form_fidelity, py::arg("omega"), py::arg("mu_d"),
          py::arg("mu_t"), py::arg("eta"));
    m.def("simplified_fidelity", &simplified_fidelity, py::arg("mu_d"), py::arg("mu_t"));
    m.def("distinguishability", &distinguishability, py::arg("fidelity"));
    m.def("optimal_p", &optimal_p, py::arg("budget_n"), py::arg("eta"), py::arg("mu_t"),
          py::arg("grid_points") = 64);
    m.def("budget_audit", &budget_audit, py::arg("config"));

    // ---- key rates ----
    py::class_<ChannelModel>(m, "ChannelModel")
        .def(py::init([](double l, double l0, double lq) {
                 ChannelModel c{l, l0, lq};
                 c.validate();
                 return c;
             }),
             py::arg("length_km"), py::arg("attenuation_km") = 25.0,
             py::arg("dephasing_km") = 150.0)
        .def_readwrite("length_km", &ChannelModel::length_km)
        .def_readwrite("attenuation_km", &ChannelModel::attenuation_km)
        .def_readwrite("dephasing_km", &ChannelModel::dephasing_km)
        .def("transmissivity", &ChannelModel::transmissivity)
        .def("dephasing_error", &ChannelModel::dephasing_error);

    py::enum_<DetectorKind>(m, "DetectorKind")
        .value("Bucket", DetectorKind::Bucket)
        .value("Pnrd", DetectorKind::Pnrd);

    py::class_<DetectionStats>(m, "DetectionStats")
        .def_readonly("p_succ", &DetectionStats::p_succ)
        .def_readonly("eps", &DetectionStats::eps)
        .def_readonly("detector_kind", &DetectionStats::detector_kind);

    py::class_<KeyRateResult>(m, "KeyRateResult")
        .def_readonly("key_rate", &KeyRateResult::key_rate)
        .def_readonly("key_rate_raw", &KeyRateResult::key_rate_raw)
        .def_readonly("eps_tilde", &KeyRateResult::eps_tilde)
        .def_readonly("delta_used", &KeyRateResult::delta_used)
        .def_readonly("saturated", &KeyRateResult::saturated);

    py::class_<ThermalOptimum>(m, "ThermalOptimum")
        .def_readonly("mu_t_star", &ThermalOptimum::mu_t_star)
        .def_readonly("best", &ThermalOptimum::best);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("length_km", &SweepRow::length_km)
        .def_readonly("key_rate", &SweepRow::key_rate)
        .def_readonly("key_rate_raw", &SweepRow::key_rate_raw)
        .def_readonly("eps", &SweepRow::eps)
        .def_readonly("eps_tilde", &SweepRow::eps_tilde)
        .def_readonly("p_succ", &SweepRow::p_succ)
        .def_readonly("mu_t_opt", &SweepRow::mu_t_opt);

    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("effective_error", &effective_error, py::arg("eps"), py::arg("delta"));
    m.def("bucket_stats", &bucket_stats, py::arg("mu_t"), py::arg("transmissivity"),
          py::arg("q_error"));
    m.def("pnrd_stats", &pnrd_stats, py::arg("mu_t"), py::arg("transmissivity"),
          py::arg("q_error"));
    m.def("secret_key_rate", &secret_key_rate, py::arg("p_succ"), py::arg("eps"),
          py::arg("delta"));
    m.def("vanilla_key_rate", &vanilla_key_rate, py::arg("raw_rate"), py::arg("eps"));
    m.def("optimize_thermal", &optimize_thermal, py::arg("mu_d"), py::arg("channel"),
          py::arg("mu_t_min") = 1e-4, py::arg("mu_t_max") = 1e3, py::arg("grid_points") = 128);
    m.def("distance_sweep", &distance_sweep, py::arg("mu_d"), py::arg("channel_template"),
          py::arg("lengths_km"), py::arg("optimize"));
    m.def("secure_range", &secure_range, py::arg("sweep"), py::arg("mu_d"),
          py::arg("channel_template"), py::arg("optimize"));

    // ---- separable bound ----
    py::class_<SubspaceState>(m, "SubspaceState")
        .def_readonly("matrix", &SubspaceState::matrix)
        .def_readonly("mu", &SubspaceState::mu)
        .def_readonly("eta", &SubspaceState::eta)
        .def_readonly("alpha_term", &SubspaceState::alpha_term)
        .def_readonly("beta", &SubspaceState::beta);

    py::class_<SurvivalCheck>(m, "SurvivalCheck")
        .def_readonly("lhs", &SurvivalCheck::lhs)
        .def_readonly("rhs", &SurvivalCheck::rhs)
        .def_readonly("holds", &SurvivalCheck::holds);

    m.def("beta_max", &beta_max, py::arg("mu"));
    m.def("rho_sub", &rho_sub, py::arg("mu"), py::arg("eta"), py::arg("alpha_term"),
          py::arg("beta"));
    m.def("separable_delta_bound", &separable_delta_bound, py::arg("mu"));
    m.def("lucamarini_delta", &lucamarini_delta, py::arg("mu"));
    m.def("constructive_delta", &constructive_delta, py::arg("mu"));
    m.def("survival_bound_check", &survival_bound_check, py::arg("rho"), py::arg("eta"));
    m.def("bimodal_inequality", &bimodal_inequality, py::arg("y"), py::arg("p"));

    // ---- shutter defense ----
    py::class_<ShutterConfig>(m, "ShutterConfig")
        .def(py::init<>())
        .def_readwrite("t_open", &ShutterConfig::t_open)
        .def_readwrite("t_period", &ShutterConfig::t_period)
        .def_readwrite("t_travel", &ShutterConfig::t_travel)
        .def_readwrite("reflectivity", &ShutterConfig::reflectivity)
        .def_readwrite("photons_in", &ShutterConfig::photons_in)
        .def_readwrite("conv_width", &ShutterConfig::conv_width)
        .def_readwrite("max_reflections", &ShutterConfig::max_reflections)
        .def_readwrite("eps", &ShutterConfig::eps);

    py::class_<TimedSample>(m, "TimedSample")
        .def(py::init<double, double>(), py::arg("t"), py::arg("value"))
        .def_readwrite("t", &TimedSample::t)
        .def_readwrite("value", &TimedSample::value);

    py::class_<ShutterSweepRow>(m, "ShutterSweepRow")
        .def_readonly("t_travel", &ShutterSweepRow::t_travel)
        .def_readonly("reflections", &ShutterSweepRow::reflections)
        .def_readonly("mu", &ShutterSweepRow::mu)
        .def_readonly("key_rate_raw", &ShutterSweepRow::key_rate_raw)
        .def_readonly("key_rate_convolved", &ShutterSweepRow::key_rate_convolved);

    m.def("reflection_count", &reflection_count, py::arg("config"));
    m.def("returned_mean_photons", &returned_mean_photons, py::arg("photons_in"),
          py::arg("reflectivity"), py::arg("reflections"));
    m.def("shutter_key_rate", &shutter_key_rate, py::arg("config"));
    m.def("minimizing_convolution", &minimizing_convolution, py::arg("samples"), py::arg("delta"));
    m.def("travel_time_sweep", &travel_time_sweep, py::arg("config"), py::arg("t_travel_grid"));

#ifdef THA_VERSION
    m.attr("__version__") = THA_VERSION;
#endif
}
