#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "lowreg/diagnostics.hpp"
#include "lowreg/errors.hpp"
#include "lowreg/nls.hpp"
#include "lowreg/study.hpp"
#include "lowreg/wave.hpp"

namespace py = pybind11;
using namespace lowreg;

namespace {

py::array_t<cplx> coeff_array(const SpectralField& f) {
  const auto c = f.coeffs();
  py::array_t<cplx> out(static_cast<py::ssize_t>(c.size()));
  std::copy(c.begin(), c.end(), out.mutable_data());
  return out;
}

SpectralField field_from(int n, py::array_t<cplx, py::array::c_style | py::array::forcecast> c,
                         bool is_real) {
  if (c.ndim() != 1 || c.shape(0) != n)
    throw std::invalid_argument("coefficient array must have shape (n_modes,)");
  return SpectralField(TorusGrid(n), std::vector<cplx>(c.data(), c.data() + n), is_real);
}

}  // namespace

PYBIND11_MODULE(_lowreg, m) {
  m.doc() = "Low-regularity time integrators on the torus";
  m.attr("__version__") = std::string(library_version());

  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<TorusGrid>(m, "TorusGrid")
      .def(py::init<int>(), py::arg("n_modes"))
      .def_property_readonly("n_modes", &TorusGrid::n_modes)
      .def("points", &TorusGrid::points)
      .def("freqs", &TorusGrid::freqs);

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init(&field_from), py::arg("n_modes"), py::arg("coeffs"),
           py::arg("is_real") = false)
      .def_property_readonly("n_modes", &SpectralField::n_modes)
      .def_property_readonly("is_real", &SpectralField::is_real)
      .def_property_readonly("coeffs", &coeff_array)
      .def("coeff", &SpectralField::coeff)
      .def("conj", &SpectralField::conj)
      .def("resampled", [](const SpectralField& f, int n) { return f.resampled(TorusGrid(n)); })
      .def("values", [](const SpectralField& f, int oversample) { return to_physical(f, oversample); },
           py::arg("oversample") = 1)
      .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__rmul__", [](const SpectralField& a, cplx s) { return s * a; });

  py::class_<WaveState>(m, "WaveState")
      .def(py::init<SpectralField, SpectralField>(), py::arg("u"), py::arg("v"))
      .def_readonly("u", &WaveState::u)
      .def_readonly("v", &WaveState::v);

  m.def("mode", [](int n, int k, cplx value) { return SpectralField::mode(TorusGrid(n), k, value); },
        py::arg("n_modes"), py::arg("k"), py::arg("value") = cplx(1.0));
  m.def("random_rough_field",
        [](int n, double theta, double delta, std::uint64_t seed, bool real_valued, double amplitude) {
          return random_rough_field({theta, delta, seed, real_valued, amplitude}, TorusGrid(n));
        },
        py::arg("n_modes"), py::arg("theta") = 1.0, py::arg("delta") = 0.01, py::arg("seed") = 0,
        py::arg("real_valued") = false, py::arg("amplitude") = 1.0);

  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("r"));
  m.def("lebesgue_norm", &lebesgue_norm, py::arg("field"), py::arg("p"));
  m.def("derivative", &derivative, py::arg("field"), py::arg("order"));
  m.def("translate", &translate, py::arg("field"), py::arg("shift"));

  m.def("free_flow", &free_flow, py::arg("field"), py::arg("t"));
  m.def("phi1_apply", &phi1_apply, py::arg("field"), py::arg("tau"));
  m.def("lri_step", &lri_step, py::arg("u"), py::arg("tau"), py::arg("mu"));
  m.def("lie_step_nls", &lie_step_nls, py::arg("u"), py::arg("tau"), py::arg("mu"));
  m.def("nls_integrate",
        [](const SpectralField& u0, int mu, double t_end, double tau, const std::string& scheme) {
          return nls_integrate({mu, u0, t_end}, tau, nls_stepper_from_string(scheme));
        },
        py::arg("u0"), py::arg("mu"), py::arg("t_end"), py::arg("tau"),
        py::arg("scheme") = "lri");

  m.def("wave_flow", &wave_flow, py::arg("state"), py::arg("t"));
  m.def("phi2_apply", &phi2_apply, py::arg("state"), py::arg("tau"));
  m.def("corrected_lie_step",
        [](const WaveState& w, double tau, const std::string& nl) {
          return corrected_lie_step(w, tau, Nonlinearity::from_string(nl));
        },
        py::arg("state"), py::arg("tau"), py::arg("nonlinearity"));
  m.def("lie_step_wave",
        [](const WaveState& w, double tau, const std::string& nl) {
          return lie_step_wave(w, tau, Nonlinearity::from_string(nl));
        },
        py::arg("state"), py::arg("tau"), py::arg("nonlinearity"));
  m.def("h1xl2_norm", &h1xl2_norm);

  m.def("strichartz_l4",
        [](const SpectralField& u0, int mu, double t_end, int samples, double tau_ref) {
          return strichartz_l4(nls_reference_solve({mu, u0, t_end}, samples, tau_ref));
        },
        py::arg("u0"), py::arg("mu"), py::arg("t_end"), py::arg("samples"), py::arg("tau_ref"));
  m.def("nullform_norm",
        [](const WaveState& w0, const std::string& nl, double t_end, int samples, double tau_ref) {
          return nullform_norm(
              wave_reference_solve({Nonlinearity::from_string(nl), w0, t_end}, samples, tau_ref));
        },
        py::arg("initial"), py::arg("nonlinearity"), py::arg("t_end"), py::arg("samples"),
        py::arg("tau_ref"));

  m.def("fit_rate",
        [](const std::vector<std::pair<double, double>>& pairs) {
          const RateFit f = fit_rate(pairs);
          return py::make_tuple(f.slope, f.r_squared);
        },
        py::arg("pairs"));
  m.def("parse_tau_list", &parse_tau_list, py::arg("text"));
  m.def("run_convergence_study_json",
        [](const std::string& equation, const std::string& taus, int n_modes, double t_end,
           std::uint64_t seed, double theta, const std::string& data, const std::string& scheme,
           const std::string& nonlinearity, bool spatial_check, int ref_factor,
           std::optional<double> cross_val_tol) {
          StudyConfig c;
          c.equation = equation_from_string(equation);
          c.tau_list = parse_tau_list(taus);
          c.n_modes = n_modes;
          c.t_end = t_end;
          c.seed = seed;
          c.theta = theta;
          c.data = data_kind_from_string(data);
          c.scheme = scheme;
          c.nonlinearity = nonlinearity;
          c.spatial_check = spatial_check;
          c.ref_factor = ref_factor;
          c.cross_val_tol = cross_val_tol;
          py::gil_scoped_release release;
          return report_json(run_convergence_study(c));
        },
        py::arg("equation"), py::arg("taus"), py::arg("n_modes"), py::arg("t_end") = 1.0,
        py::arg("seed") = 1, py::arg("theta") = 1.0, py::arg("data") = "rough",
        py::arg("scheme") = "", py::arg("nonlinearity") = "quadratic",
        py::arg("spatial_check") = false, py::arg("ref_factor") = 64,
        py::arg("cross_val_tol") = py::none());
}
