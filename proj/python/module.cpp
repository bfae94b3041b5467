#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ionnet/heralding.hpp"
#include "ionnet/hilbert.hpp"
#include "ionnet/ion_crystal.hpp"
#include "ionnet/light_collection.hpp"
#include "ionnet/network_estimator.hpp"
#include "ionnet/photon_source.hpp"

namespace py = pybind11;
using namespace ionnet;

namespace {

QubitKind kind_from_name(const std::string& name) {
    if (name == "number") return QubitKind::Number;
    if (name == "polarization") return QubitKind::Polarization;
    if (name == "frequency") return QubitKind::Frequency;
    if (name == "timebin") return QubitKind::Timebin;
    throw std::invalid_argument("unknown qubit kind: " + name);
}

DetectionPattern pattern_from_name(const std::string& name) {
    if (name == "coincidence") return DetectionPattern::coincidence();
    if (name == "d1t1,d2t2") return DetectionPattern::timebin(DetectorId::D1, DetectorId::D2);
    if (name == "d2t1,d1t2") return DetectionPattern::timebin(DetectorId::D2, DetectorId::D1);
    if (name == "d1t1,d1t2") return DetectionPattern::timebin(DetectorId::D1, DetectorId::D1);
    if (name == "d2t1,d2t2") return DetectionPattern::timebin(DetectorId::D2, DetectorId::D2);
    throw std::invalid_argument("unknown pattern: " + name);
}

py::dict state_dict(const PureState& s) {
    py::dict out;
    for (const auto& [label, amp] : s.terms())
        out[py::str(to_string(label))] = amp;
    return out;
}

py::dict outcome_dict(const HeraldOutcome& o) {
    py::dict out;
    out["pattern"] = to_string(o.pattern);
    out["probability"] = o.probability;
    out["atomic_state"] = state_dict(o.atomic_state);
    out["infidelity_floor"] = o.infidelity_floor;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "atom-photon network calculators";

    py::class_<PureState>(m, "PureState")
        .def("norm", &PureState::norm)
        .def("terms", &state_dict)
        .def("__len__", &PureState::term_count);

    m.def("make_number_pair", [](double p_e) { return make_number_pair(p_e); });
    m.def("make_polarization_pair",
          [](double p_up, double p_down) { return make_polarization_pair(p_up, p_down); });
    m.def("make_frequency_pair",
          [](Amplitude a, Amplitude b) { return make_frequency_pair(a, b); });
    m.def("make_timebin_pair",
          [](Amplitude a, Amplitude b) { return make_timebin_pair(a, b); });
    m.def("fidelity", &fidelity);

    m.def("beamsplitter_number", [](int n_a, int n_b) {
        PureState in({Mode{Port::A, Channel::None}, Mode{Port::B, Channel::None}});
        in.add_term(BasisLabel{{}, {n_a, n_b}}, Amplitude{1.0, 0.0});
        return state_dict(beamsplitter(in));
    });

    m.def(
        "type1_herald",
        [](double p_e, double delta_k, double delta_x, double eta_det,
           const std::string& detector, bool exact) {
            return outcome_dict(type1_herald(
                p_e, PathGeometry{delta_k, delta_x, 0.0}, eta_det,
                detector == "d2" ? DetectorId::D2 : DetectorId::D1, exact));
        },
        py::arg("p_e"), py::arg("delta_k") = 0.0, py::arg("delta_x") = 0.0,
        py::arg("eta_det") = 1.0, py::arg("detector") = "d1", py::arg("exact") = false);
    m.def(
        "type2_herald",
        [](Amplitude aa, Amplitude ba, Amplitude ab, Amplitude bb,
           const std::string& kind, const std::string& pattern, double eta_det) {
            return outcome_dict(type2_herald(aa, ba, ab, bb, kind_from_name(kind),
                                             pattern_from_name(pattern), eta_det));
        },
        py::arg("alpha_a"), py::arg("beta_a"), py::arg("alpha_b"), py::arg("beta_b"),
        py::arg("kind") = "frequency", py::arg("pattern") = "coincidence",
        py::arg("eta_det") = 1.0);
    m.def("type1_success", &type1_success);
    m.def("type2_success", &type2_success);
    m.def("type1_recoil_fidelity", &type1_recoil_fidelity);
    m.def("within_lamb_dicke_limit", &within_lamb_dicke_limit);

    m.def("equilibrium_positions",
          [](int n) { return equilibrium_positions(n).positions; });
    m.def("normal_mode_frequencies", [](int n, double anisotropy) {
        IonCrystal crystal;
        crystal.n_ions = n;
        crystal.omega_transverse = anisotropy;
        const NormalModes modes = normal_modes(crystal);
        return py::make_tuple(modes.axial_freqs, modes.transverse_freqs);
    });
    m.def(
        "radiation_pattern",
        [](int n, double eta_lambda, double anisotropy, double theta_in, int grid) {
            return radiation_pattern(doppler_crystal(n, eta_lambda, anisotropy),
                                     theta_in, grid);
        },
        py::arg("n"), py::arg("eta_lambda"), py::arg("anisotropy") = 10.0,
        py::arg("theta_in") = 0.0, py::arg("grid") = 2048);
    m.def("spot_metrics", [](int n, double eta_lambda) {
        const SpotMetrics s = spot_metrics(n, eta_lambda);
        return py::make_tuple(s.delta_theta, s.fraction, s.witness_floor);
    });
    m.def("spread_fit", [](const std::vector<int>& ns) {
        const SpreadFit f = spread_fit(ns);
        return py::make_tuple(f.prefactor, f.exponent, f.r_squared);
    });
    m.def("cabrillo_fidelity", &cabrillo_fidelity, py::arg("eta"), py::arg("nbar"),
          py::arg("nu_over_gamma"), py::arg("chi"), py::arg("rel_tol") = 1e-8);
    m.def("cabrillo_fidelity_weak", &cabrillo_fidelity_weak);

    m.def(
        "sigma_coupling_analytic",
        [](double f_over_w, Amplitude jones_x, Amplitude jones_y, double rho_max_over_w,
           int mm) {
            return sigma_coupling_analytic(f_over_w, FiberMode{1.0, jones_x, jones_y},
                                           rho_max_over_w, mm);
        },
        py::arg("f_over_w"), py::arg("jones_x"), py::arg("jones_y"),
        py::arg("rho_max_over_w") = kInfiniteRadius, py::arg("m") = 1);
    m.def(
        "fiber_overlap_numeric",
        [](int mm, double f_over_w, Amplitude jones_x, Amplitude jones_y,
           double rho_max_over_w) {
            return fiber_overlap_numeric(mm, Paraboloid{f_over_w, rho_max_over_w},
                                         FiberMode{1.0, jones_x, jones_y});
        },
        py::arg("m"), py::arg("f_over_w"), py::arg("jones_x"), py::arg("jones_y"),
        py::arg("rho_max_over_w") = kInfiniteRadius);
    m.def(
        "optimize_focus",
        [](Amplitude jones_x, Amplitude jones_y, double rho_max_over_w, int mm) {
            const FocusOptimum best =
                optimize_focus(FiberMode{1.0, jones_x, jones_y}, rho_max_over_w, mm);
            return py::make_tuple(best.f_star, best.p_star);
        },
        py::arg("jones_x"), py::arg("jones_y"),
        py::arg("rho_max_over_w") = kInfiniteRadius, py::arg("m") = 1);
    m.def("mirror_gate_coincidence", &mirror_gate_coincidence);
    m.def("cavity_collection",
          [](double g, double kappa, double gamma, double t_out, double l_total) {
              const CavityCollection c =
                  cavity_collection(CavityParams{g, kappa, gamma, t_out, l_total});
              return py::make_tuple(c.cooperativity, c.p_c);
          });

    m.def("atom_photon_success", &atom_photon_success);
    m.def("deterministic_gate_time", &deterministic_gate_time);
    m.def("repeater_time", &repeater_time);
    m.def("cluster_time", &cluster_time);
    m.def("bell_separation", &bell_separation);
    m.def("seconds_to_years", &seconds_to_years);
}
