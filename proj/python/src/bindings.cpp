#include "abplab/barrier.hpp"
#include "abplab/constants_ledger.hpp"
#include "abplab/experiments.hpp"
#include "abplab/harnack_functional.hpp"
#include "abplab/model_space.hpp"
#include "abplab/pucci.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace abplab;

namespace {

Point to_point(const Vec3& v) { return Point{v}; }

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Numerical checks on two-dimensional model spaces";

  static py::exception<Error> error(mod, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<ModelSpace>(mod, "ModelSpace")
      .def_static("euclidean", &ModelSpace::euclidean)
      .def_static("sphere", &ModelSpace::sphere, py::arg("k"))
      .def_static("hyperbolic", &ModelSpace::hyperbolic, py::arg("k"))
      .def_static("gaussian_plane", &ModelSpace::gaussian_plane, py::arg("lam"))
      .def_property_readonly("kind", [](const ModelSpace& m) { return std::string(to_string(m.kind())); })
      .def_property_readonly("k", &ModelSpace::k)
      .def_property_readonly("cut_radius", &ModelSpace::cut_radius)
      .def("origin", [](const ModelSpace& m) { return m.origin().coords; })
      .def("from_plane", [](const ModelSpace& m, double x, double y) { return m.from_plane(x, y).coords; })
      .def("__repr__", &ModelSpace::describe);

  mod.def("distance", [](const ModelSpace& m, const Vec3& p, const Vec3& q) {
    return distance(m, to_point(p), to_point(q));
  });
  mod.def("exp_map", [](const ModelSpace& m, const Vec3& p, const Vec3& v) {
    return exp_map(m, TangentVector{to_point(p), v}).coords;
  });
  mod.def("log_map", [](const ModelSpace& m, const Vec3& p, const Vec3& q) {
    return log_map(m, to_point(p), to_point(q)).components;
  });
  mod.def("ball_measure", [](const ModelSpace& m, const Vec3& c, double r) {
    return ball_measure(m, to_point(c), r).value;
  });
  mod.def("ricci_lower_bound", py::overload_cast<const ModelSpace&, double, double>(&ricci_lower_bound),
          py::arg("model"), py::arg("N"), py::arg("ball_radius"));

  mod.def("calH", &calH);
  mod.def("calS", &calS);
  mod.def(
      "ledger",
      [](double K, double N, double R) { return to_json(build_ledger({K, N, R})).dump(); },
      py::arg("K"), py::arg("N"), py::arg("R"), "Constants ledger as a JSON string.");

  mod.def("barrier_h", [](double alpha, double t) {
    const auto m = ModelSpace::euclidean();
    return barrier_h(make_barrier(m, m.origin(), 1.0, alpha), t);
  });

  mod.def("pucci", [](const Mat2& H, double theta) {
    const auto p = pucci(H, theta);
    return py::make_tuple(p.m_minus, p.m_plus);
  });
  mod.def("e_theta", &e_theta, py::arg("model"), py::arg("r"), py::arg("theta"));

  mod.def("poisson_kernel_disc", &poisson_kernel_disc);
  mod.def("hfun_closed_form", &hfun_closed_form);
  mod.def("theta_ratio", &theta_ratio);
  mod.def(
      "hfun_numeric",
      [](const ModelSpace& m, double d, int n_boundary, int n_ball) {
        return hfun_numeric(m, d, n_boundary, n_ball).value_numeric;
      },
      py::arg("model"), py::arg("d"), py::arg("n_boundary") = 512, py::arg("n_ball") = 512);

  mod.def(
      "run_experiment",
      [](const std::string& config_json) {
        ExperimentConfig cfg = config_from_json(Json::parse(config_json));
        cfg.validate();
        Json out = Json::array();
        for (const auto& s : run_experiment(cfg)) out.push_back(suite_json(s, cfg));
        return out.dump();
      },
      py::arg("config_json"), "Runs a suite; config and result are JSON strings.");
}
