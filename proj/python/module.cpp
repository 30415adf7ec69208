// Python bindings for the main operations: forward scattering, bound-state
// surgery, dispersion reconstruction, and the inverse enumeration pipeline.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatter1d/darboux.hpp"
#include "scatter1d/dispersion.hpp"
#include "scatter1d/errors.hpp"
#include "scatter1d/inverse.hpp"
#include "scatter1d/io.hpp"
#include "scatter1d/jost.hpp"
#include "scatter1d/potential.hpp"

namespace py = pybind11;
using namespace scatter1d;

PYBIND11_MODULE(_scatter1d, m) {
  m.doc() = "forward and inverse scattering for compactly supported line potentials";

  py::register_exception<BadInput>(m, "BadInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  py::class_<SampledGrid>(m, "SampledGridData")
      .def_readonly("x0", &SampledGrid::x0)
      .def_readonly("dx", &SampledGrid::dx)
      .def_readonly("samples", &SampledGrid::samples);

  py::class_<Potential>(m, "Potential")
      .def("__call__", &Potential::operator())
      .def_property_readonly("support_min", &Potential::support_min)
      .def_property_readonly("support_max", &Potential::support_max)
      .def("to_json", &potential_to_json_text)
      .def("__repr__", [](const Potential& v) {
        return "<Potential support [" + std::to_string(v.support_min()) + ", " +
               std::to_string(v.support_max()) + "]>";
      });

  m.def("square_well", [](double eps) { return Potential{SquareWell{eps}}; }, py::arg("epsilon"),
        "V = -epsilon on [0,1]");
  m.def("piecewise",
        [](std::vector<double> breaks, std::vector<double> values) {
          return Potential{PiecewiseConstant{std::move(breaks), std::move(values)}};
        },
        py::arg("breakpoints"), py::arg("values"));
  m.def("grid",
        [](double x0, double dx, std::vector<double> samples) {
          return Potential{SampledGrid{x0, dx, std::move(samples)}};
        },
        py::arg("x0"), py::arg("dx"), py::arg("samples"));
  m.def("zero_potential", [](double a, double b) { return Potential::zero(a, b); },
        py::arg("a") = 0.0, py::arg("b") = 1.0);
  m.def("potential_from_json", &potential_from_json_text, py::arg("text"));
  m.def("grid_data", [](const Potential& v) {
    if (const auto* g = std::get_if<SampledGrid>(&v.form())) return *g;
    throw BadInput("not a grid potential");
  });

  py::class_<NormReport>(m, "NormReport")
      .def_readonly("l2", &NormReport::l2)
      .def_readonly("l1_weighted", &NormReport::l1_weighted)
      .def_readonly("integral", &NormReport::integral);
  m.def("norms", &norms);

  py::class_<ScatteringCoefficients>(m, "ScatteringCoefficients")
      .def_readonly("kgrid", &ScatteringCoefficients::kgrid)
      .def_readonly("T", &ScatteringCoefficients::T)
      .def_readonly("L", &ScatteringCoefficients::L)
      .def_readonly("R", &ScatteringCoefficients::R);
  m.def("scattering_coefficients",
        [](const Potential& v, std::vector<double> kgrid, int threads) {
          return scattering_coefficients(v, std::move(kgrid), threads);
        },
        py::arg("potential"), py::arg("kgrid"), py::arg("threads") = 0);
  m.def("ratio_D",
        [](const Potential& v, std::vector<double> kgrid) {
          return ratio_D(v, kgrid);
        },
        py::arg("potential"), py::arg("kgrid"));
  m.def("ratio_D_at", &ratio_D_at, py::arg("potential"), py::arg("k"));

  py::class_<BoundStateData>(m, "BoundStateData")
      .def_readonly("kappas", &BoundStateData::kappas)
      .def_readonly("gammas", &BoundStateData::gammas);
  m.def("find_bound_states", &find_bound_states, py::arg("potential"), py::arg("kappa_max"),
        py::arg("scan_points") = 1024);
  m.def("bound_state_ceiling", &bound_state_ceiling);
  m.def("zero_energy_logderivative", &zero_energy_logderivative, py::arg("potential"),
        py::arg("step") = 0.0);

  py::class_<DarbouxStep>(m, "DarbouxStep")
      .def_readonly("kappa", &DarbouxStep::kappa)
      .def_readonly("gamma_abs", &DarbouxStep::gamma_abs)
      .def_readonly("chi", &DarbouxStep::chi)
      .def_readonly("mu", &DarbouxStep::mu);
  py::class_<DarbouxAddition>(m, "DarbouxAddition")
      .def_readonly("potential", &DarbouxAddition::potential)
      .def_readonly("step", &DarbouxAddition::step);
  m.def("add_bound_state", &add_bound_state, py::arg("potential"), py::arg("kappa"),
        py::arg("gamma_abs"), py::arg("step_hint") = 0.0, py::arg("tail_tol") = 1e-8);
  m.def("remove_bound_state", &remove_bound_state, py::arg("potential"), py::arg("index"));

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("n", &IdentityReport::n)
      .def_readonly("lhs", &IdentityReport::lhs)
      .def_readonly("rhs", &IdentityReport::rhs)
      .def_readonly("residual", &IdentityReport::residual);
  m.def("integral_identity", &integral_identity, py::arg("v_after"), py::arg("v_before"),
        py::arg("kappa"), py::arg("n"));

  py::class_<NormShiftReport>(m, "NormShiftReport")
      .def_readonly("dl1", &NormShiftReport::dl1)
      .def_readonly("dl1_expected", &NormShiftReport::dl1_expected)
      .def_readonly("dl1_residual", &NormShiftReport::dl1_residual)
      .def_readonly("dl2sq", &NormShiftReport::dl2sq)
      .def_readonly("dl2sq_expected", &NormShiftReport::dl2sq_expected)
      .def_readonly("dl2sq_residual", &NormShiftReport::dl2sq_residual);
  m.def("norm_shift_report",
        [](const Potential& v0, const Potential& vn, std::vector<double> kappas) {
          return norm_shift_report(v0, vn, kappas);
        },
        py::arg("v0"), py::arg("vn"), py::arg("kappas"));
  m.def("signflip_partner", &signflip_partner, py::arg("potential"));

  py::class_<ReflectionRatio>(m, "ReflectionRatio")
      .def_static("square_well", &ReflectionRatio::square_well, py::arg("epsilon"))
      .def_static("from_potential", &ReflectionRatio::from_potential, py::arg("potential"))
      .def_static("sampled", &ReflectionRatio::sampled, py::arg("kgrid"), py::arg("values"))
      .def("__call__", &ReflectionRatio::eval, py::arg("k"))
      .def("eval_real", &ReflectionRatio::eval_real, py::arg("k"))
      .def("eval_imag_axis", &ReflectionRatio::eval_imag_axis, py::arg("kappa"));

  py::enum_<Classification::Kind>(m, "ClassificationKind")
      .value("GENERIC_EVEN", Classification::Kind::GenericEven)
      .value("GENERIC_ODD", Classification::Kind::GenericOdd)
      .value("EXCEPTIONAL", Classification::Kind::Exceptional);
  py::class_<Classification>(m, "Classification")
      .def_readonly("kind", &Classification::kind)
      .def_readonly("zero_limit", &Classification::zero_limit);
  m.def("classify", &classify);
  m.def("count_odd_zeros", &count_odd_zeros, py::arg("data"), py::arg("kappa_window") = 0.0);

  py::class_<TzeroResult>(m, "TzeroResult")
      .def_readonly("value", &TzeroResult::value)
      .def_readonly("abs_error", &TzeroResult::abs_error);
  m.def("tzero_integral", &tzero_integral, py::arg("data"), py::arg("k"),
        py::arg("quad_tol") = 1e-8);
  m.def("tzero_closed_form", &tzero_closed_form, py::arg("epsilon"), py::arg("k"));

  py::class_<ResonanceSet>(m, "ResonanceSet")
      .def_readonly("betas", &ResonanceSet::betas)
      .def_readonly("source", &ResonanceSet::source);
  m.def("find_resonances", &find_resonances, py::arg("data"), py::arg("beta_max") = 0.0,
        py::arg("scan_points") = 2048, py::arg("bisect_tol") = 1e-8);

  m.def("allowed_N",
        [](const Classification& cls, int z) { return allowed_N(cls, z); },
        py::arg("classification"), py::arg("z"));

  py::class_<Candidate>(m, "Candidate")
      .def_readonly("N", &Candidate::n)
      .def_readonly("kappas", &Candidate::kappas)
      .def_readonly("gammas", &Candidate::gammas)
      .def_readonly("C_N", &Candidate::c_n);
  m.def("enumerate_candidates",
        [](const ReflectionRatio& d, const ResonanceSet& rs, std::vector<int> allowed,
           double c0) { return enumerate_candidates(d, rs, allowed, c0); },
        py::arg("data"), py::arg("resonances"), py::arg("allowed_N"), py::arg("c0"));
  m.def("c0_from_reference", &c0_from_reference, py::arg("reference"));

  py::enum_<Disambiguation::Status>(m, "DisambiguationStatus")
      .value("UNIQUE", Disambiguation::Status::Unique)
      .value("AMBIGUOUS", Disambiguation::Status::Ambiguous)
      .value("NONE_BELOW", Disambiguation::Status::NoneBelow);
  py::class_<Disambiguation>(m, "Disambiguation")
      .def_readonly("status", &Disambiguation::status)
      .def_readonly("qualifying", &Disambiguation::qualifying);
  m.def("disambiguate",
        [](std::vector<Candidate> candidates, double c_bound) {
          return disambiguate(candidates, c_bound);
        },
        py::arg("candidates"), py::arg("c_bound"));

  py::class_<CandidateVerification>(m, "CandidateVerification")
      .def_readonly("candidate", &CandidateVerification::candidate)
      .def_readonly("reconstructed", &CandidateVerification::reconstructed)
      .def_readonly("d_max_err", &CandidateVerification::d_max_err)
      .def_readonly("norm", &CandidateVerification::norm)
      .def_readonly("norm_rel_err", &CandidateVerification::norm_rel_err)
      .def_readonly("tail_max", &CandidateVerification::tail_max)
      .def_readonly("bound_states_found", &CandidateVerification::bound_states_found);
  m.def("verify_candidate",
        [](const Candidate& cand, const ReflectionRatio& d, const Potential& v_ref,
           std::vector<double> kgrid) { return verify_candidate(cand, d, v_ref, kgrid); },
        py::arg("candidate"), py::arg("data"), py::arg("reference"), py::arg("check_kgrid"));
}
