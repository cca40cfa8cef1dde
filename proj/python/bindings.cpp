#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/catalog.hpp"
#include "pulsewalk/export.hpp"
#include "pulsewalk/magnus.hpp"
#include "pulsewalk/perturbation.hpp"
#include "pulsewalk/sequence_io.hpp"
#include "pulsewalk/toggling.hpp"
#include "pulsewalk/walks.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pulsewalk;

namespace {

const char* code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::unsupported_pulse_area: return "unsupported_pulse_area";
        case ErrorCode::open_walk: return "open_walk";
        case ErrorCode::out_of_range: return "out_of_range";
        case ErrorCode::infeasible: return "infeasible";
        case ErrorCode::no_sign_change: return "no_sign_change";
        case ErrorCode::unknown_name: return "unknown_name";
        case ErrorCode::parse_error: return "parse_error";
    }
    return "unknown";
}

Sequence make_sequence(const std::string& name, const std::vector<double>& phases, std::optional<std::vector<double>> angles,
                       const Vec3& axis, double angle) {
    if (angles && angles->size() != phases.size()) {
        throw Error(ErrorCode::invalid_argument, "phases and angles must have the same length");
    }
    std::vector<PulseStep> steps;
    for (std::size_t j = 0; j < phases.size(); ++j) steps.emplace_back(phases[j], angles ? (*angles)[j] : 1.0);
    return Sequence(name, std::move(steps), NetEffect{axis, angle});
}

std::vector<double> as_list(const TogglingPhases& t) { return t.phases; }

}  // namespace

PYBIND11_MODULE(_pulsewalk, m) {
    m.doc() = "Geometric error walks for composite pulse sequences";

    static py::exception<Error> error(m, "PulsewalkError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("code") = code_name(e.code());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::enum_<Channel>(m, "Channel")
        .value("amplitude", Channel::amplitude)
        .value("detuning", Channel::detuning);

    py::class_<ErrorModel>(m, "ErrorModel")
        .def(py::init<double, double>(), py::arg("epsilon") = 0.0, py::arg("delta") = 0.0)
        .def_property_readonly("epsilon", &ErrorModel::epsilon)
        .def_property_readonly("delta", &ErrorModel::delta)
        .def("__repr__", [](const ErrorModel& e) {
            return "ErrorModel(epsilon=" + std::to_string(e.epsilon()) + ", delta=" + std::to_string(e.delta()) + ")";
        });

    py::class_<Sequence>(m, "Sequence")
        .def(py::init(&make_sequence), py::arg("name"), py::arg("phases"), py::arg("angles") = py::none(),
             py::arg("net_axis") = Vec3(Vec3::UnitX()), py::arg("net_angle") = 1.0,
             "Phases and angles in units of pi; angles default to pi-pulses.")
        .def_property_readonly("name", &Sequence::name)
        .def_property_readonly("phases", &Sequence::phases)
        .def_property_readonly("angles", &Sequence::angles)
        .def_property_readonly("total_duration", &Sequence::total_duration)
        .def_property_readonly("net_axis", [](const Sequence& s) { return s.intended_net_effect().axis; })
        .def_property_readonly("net_angle", [](const Sequence& s) { return s.intended_net_effect().angle; })
        .def("is_pi_train", &Sequence::is_pi_train, py::arg("tol") = 1e-12)
        .def("__len__", &Sequence::size)
        .def("__repr__", [](const Sequence& s) {
            return "Sequence('" + s.name() + "', " + std::to_string(s.size()) + " steps)";
        });

    py::class_<Walk>(m, "Walk")
        .def_readonly("kind", &Walk::kind)
        .def_property_readonly("phases", [](const Walk& w) { return w.phases.phases; })
        .def_readonly("steps", &Walk::steps)
        .def_readonly("closure_residual", &Walk::closure_residual)
        .def("closed", &Walk::closed, py::arg("tol") = kClosureTolerance)
        .def("area_integral", &area_integral)
        .def("vector_area", [](const Walk& w) { return vector_area(w); })
        .def("sample", [](const Walk& w, std::size_t per_segment) {
            std::vector<Vec3> pts;
            for (const auto& s : sample_walk(w, per_segment)) pts.push_back(s.p);
            return pts;
        }, py::arg("per_segment") = 16);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("final_lab", &SimResult::final_lab)
        .def_readonly("final_toggling", &SimResult::final_toggling)
        .def_readonly("ideal", &SimResult::ideal)
        .def_readonly("deviation", &SimResult::deviation)
        .def_property_readonly("trajectory", [](const SimResult& r) {
            std::vector<std::pair<double, Vec3>> out;
            for (const auto& p : r.trajectory) out.emplace_back(p.t, p.r);
            return out;
        });

    py::class_<SlopeRange>(m, "SlopeRange")
        .def(py::init([](double lo, double hi, std::size_t points) { return SlopeRange{lo, hi, points}; }),
             py::arg("lo") = 1e-4, py::arg("hi") = 1e-2, py::arg("points") = 7)
        .def_readwrite("lo", &SlopeRange::lo)
        .def_readwrite("hi", &SlopeRange::hi)
        .def_readwrite("points", &SlopeRange::points);

    py::class_<SlopeReport>(m, "SlopeReport")
        .def_readonly("error_values", &SlopeReport::error_values)
        .def_readonly("deviations", &SlopeReport::deviations)
        .def_readonly("slope", &SlopeReport::slope)
        .def_readonly("intercept", &SlopeReport::intercept)
        .def_readonly("r_squared", &SlopeReport::r_squared);

    py::class_<MagnusTerms>(m, "MagnusTerms")
        .def_readonly("phi1_vector", &MagnusTerms::phi1_vector)
        .def_readonly("phi2_vector", &MagnusTerms::phi2_vector);

    py::class_<JonesSums>(m, "JonesSums")
        .def_readonly("amplitude_sum", &JonesSums::amplitude_sum)
        .def_readonly("detuning_sum", &JonesSums::detuning_sum);

    py::class_<PerturbationReport>(m, "PerturbationReport")
        .def_readonly("r1", &PerturbationReport::r1)
        .def_readonly("r2", &PerturbationReport::r2)
        .def_readonly("tail_bound", &PerturbationReport::tail_bound)
        .def_readonly("order_certified", &PerturbationReport::order_certified);

    py::class_<AlphaScanPoint>(m, "AlphaScanPoint")
        .def_readonly("alpha", &AlphaScanPoint::alpha)
        .def_readonly("residual", &AlphaScanPoint::residual)
        .def_readonly("area_z", &AlphaScanPoint::area_z);

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("sequence", &VerifyReport::sequence)
        .def_readonly("channel", &VerifyReport::channel)
        .def_readonly("method", &VerifyReport::method)
        .def_readonly("closure_residual", &VerifyReport::closure_residual)
        .def_readonly("vector_area", &VerifyReport::vector_area)
        .def_readonly("first_order", &VerifyReport::first_order)
        .def_readonly("second_order", &VerifyReport::second_order)
        .def_readonly("certified_order", &VerifyReport::certified_order)
        .def_readonly("preserved_axes", &VerifyReport::preserved_axes)
        .def_readonly("slope", &VerifyReport::slope);

    m.def("catalog", [](const std::string& name) { return catalog(name); }, py::arg("name"));
    m.def("catalog_names", &catalog_names);
    m.def("knill_family", &knill_family, py::arg("alpha"));
    m.def("theta_family", &theta_family, py::arg("theta"), py::arg("alpha"));
    m.def("solve_magic_angle", &solve_magic_angle, py::arg("channel"), py::arg("lo") = 0.0, py::arg("hi") = kPi);
    m.def("scan_alpha", &scan_alpha, py::arg("channel"), py::arg("lo"), py::arg("hi"), py::arg("points"));
    m.def("parse_angle", [](const std::string& s) { return parse_angle(s); }, py::arg("text"));

    m.def("toggle_phases", [](const Sequence& s) { return as_list(toggle_phases(s)); }, py::arg("sequence"));
    m.def("toggle_lab_phases", [](const std::vector<double>& p) { return as_list(toggle_phases(p)); },
          py::arg("lab_phases"));
    m.def("toggling_directions", &toggling_directions, py::arg("sequence"));
    m.def("nominal_rotation", [](const Sequence& s, double t) { return nominal_rotation(s, t).matrix(); },
          py::arg("sequence"), py::arg("t"));
    m.def("error_in_toggling_frame", &error_in_toggling_frame, py::arg("sequence"), py::arg("error"), py::arg("t"));

    m.def("walk", &walk_for, py::arg("sequence"), py::arg("channel"));
    m.def("amplitude_walk",
          [](const std::vector<double>& p, std::optional<std::vector<double>> areas) {
              return areas ? amplitude_walk(TogglingPhases{p}, *areas) : amplitude_walk(TogglingPhases{p});
          },
          py::arg("toggling_phases"), py::arg("areas") = py::none());
    m.def("detuning_walk", [](const std::vector<double>& p) { return detuning_walk(TogglingPhases{p}); },
          py::arg("toggling_phases"));
    m.def("pairwise_sine_sum",
          [](const std::vector<double>& p, Channel ch) { return pairwise_sine_sum(TogglingPhases{p}, ch); },
          py::arg("toggling_phases"), py::arg("channel"));

    m.def("evolve", &evolve, py::arg("sequence"), py::arg("error"), py::arg("r0"), py::arg("samples_per_step") = 0);
    m.def("default_initial_states", &default_initial_states, py::arg("seed") = kDefaultSeed);
    m.def("worst_case_deviation",
          [](const Sequence& s, const ErrorModel& e, const std::vector<Vec3>& states) {
              return worst_case_deviation(s, e, states);
          },
          py::arg("sequence"), py::arg("error"), py::arg("states"));
    m.def("scaling_slope",
          [](const Sequence& s, Channel ch, std::optional<std::vector<Vec3>> states, const SlopeRange& range) {
              const auto st = states ? *states : default_initial_states();
              return scaling_slope(s, ch, st, range);
          },
          py::arg("sequence"), py::arg("channel"), py::arg("states") = py::none(), py::arg("range") = SlopeRange{});

    m.def("perturbation_report", &perturbation_report, py::arg("sequence"), py::arg("error"), py::arg("r0"));
    m.def("truncation_bound", &truncation_bound, py::arg("sequence"), py::arg("error"), py::arg("order"));
    m.def("certify_order", &certify_order, py::arg("sequence"), py::arg("error"), py::arg("tol") = 1e-9);

    m.def("magnus_terms", &magnus_terms, py::arg("sequence"), py::arg("error"));
    m.def("error_propagator", [](const Sequence& s, const ErrorModel& e) { return error_propagator(s, e).matrix(); },
          py::arg("sequence"), py::arg("error"));
    m.def("jones_constraints", [](const std::vector<double>& p) { return jones_constraints(TogglingPhases{p}); },
          py::arg("toggling_phases"));

    m.def("verify",
          [](const Sequence& s, Channel ch, bool with_slope) {
              VerifyOptions o;
              o.with_slope = with_slope;
              return verify(s, ch, o);
          },
          py::arg("sequence"), py::arg("channel"), py::arg("with_slope") = true);

    m.def("parse_sequence", [](const std::string& text) { return parse_sequence(text); }, py::arg("text"));
    m.def("sequence_to_json", &sequence_to_json, py::arg("sequence"));
    m.def("walk_csv", &walk_csv, py::arg("walk"), py::arg("per_segment") = 16);
    m.def("walk_svg", &walk_svg, py::arg("walk"), py::arg("title"), py::arg("per_segment") = 48);
}
