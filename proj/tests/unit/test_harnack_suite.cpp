#include "abplab/abp_estimate.hpp"
#include "abplab/experiments.hpp"
#include "abplab/harnack_suite.hpp"

#include "doctest.h"

#include <cmath>
#include <memory>

using namespace abplab;

TEST_CASE("Poisson solver recovers manufactured solutions") {
  DirichletProblem p;
  p.n_r = 128;
  p.n_theta = 128;
  p.f = [](const Point&) { return 4.0; };
  p.g = [](const Point& x) { return x.coords.squaredNorm(); };
  const auto sol = solve_poisson(p);
  double err = 0.0;
  for (std::size_t k = 0; k < sol.u.grid().size(); ++k)
    err = std::max(err, std::abs(sol.u.value(k) - sol.u.grid().node(k).rho * sol.u.grid().node(k).rho));
  CHECK(err <= 1e-3);

  // Weighted case: Delta_nu rho^2 = 4 - 2 lambda rho^2.
  DirichletProblem q;
  q.model = ModelSpace::gaussian_plane(1.0);
  q.center = q.model.origin();
  q.n_r = 128;
  q.n_theta = 64;
  q.f = [](const Point& x) { return 4.0 - 2.0 * x.coords.squaredNorm(); };
  q.g = [](const Point& x) { return x.coords.squaredNorm(); };
  const auto sq = solve_poisson(q);
  err = 0.0;
  for (std::size_t k = 0; k < sq.u.grid().size(); ++k)
    err = std::max(err, std::abs(sq.u.value(k) - std::pow(sq.u.grid().node(k).rho, 2)));
  CHECK(err <= 1e-3);
}

TEST_CASE("Harnack inequalities on explicit functions") {
  const auto m = ModelSpace::euclidean();
  const auto L = build_ledger({0.0, 2.0, 0.5});
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 1.0, 64, 64);

  // Positive harmonic u = 1 + x1: sup/inf over B_{1/4} is 5/3.
  FieldFunctions aff;
  aff.value = [](const Point& x) { return 1.0 + x.coords[0]; };
  aff.gradient = [](const Point&) { return Vec3(1, 0, 0); };
  aff.hessian = [](const Point&, const Vec3&, const Vec3&) { return 0.0; };
  HarnackInput in{ScalarField::closed_form(g, aff), std::vector<double>(g->size(), 0.0), {}, 1e-6};
  CHECK(harnack_check_full(in, L).pass);
  CHECK(harnack_check_sup(in, L).pass);
  CHECK(harnack_check_sub(in, L, L.p0).pass);
  CHECK(harnack_check_sub(in, L, 2.0).pass);

  // Supersolution 2 - |x|^2 with f = -4.
  FieldFunctions sup;
  sup.value = [](const Point& x) { return 2.0 - x.coords.squaredNorm(); };
  sup.gradient = [](const Point& x) { return Vec3(-2 * x.coords); };
  sup.hessian = [](const Point&, const Vec3& a, const Vec3& b) { return -2.0 * a.dot(b); };
  HarnackInput s{ScalarField::closed_form(g, sup), std::vector<double>(g->size(), -4.0), {}, 1e-6};
  CHECK(harnack_check_sup(s, L).pass);

  // Wrong relation between u and f is a rejection that names the premise.
  HarnackInput bad{ScalarField::closed_form(g, sup), std::vector<double>(g->size(), 10.0), {}, 1e-6};
  const auto r = harnack_check_full(bad, L);
  CHECK_FALSE(r.pass);
  CHECK(r.notes.count("premise") == 1);
}

TEST_CASE("ABP equality case on the plane") {
  const auto m = ModelSpace::euclidean();
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 1.0, 128, 128);
  const double a = 1.0, b = 1.0, s = 0.5;
  AbpInstance in{ScalarField::closed_form(g, quadratic_field(m, m.origin(), b)), a, 0.0, 2.0, m.origin(), s, 1e-6,
                 0.0};
  const AbpResult res = abp_check(in);
  CHECK(res.report.pass);
  CHECK(res.lhs == doctest::Approx(kPi * s * s).epsilon(1e-12));
  // D = 1 + b/a on A = disc of radius s a / (a + b), so rhs = pi s^2 as well.
  CHECK(res.rhs == doctest::Approx(kPi * s * s).epsilon(1e-3));
  CHECK(res.anomalies == 0);
  CHECK(d_bound(1.0, 2.0, 1.0, 1.0, 0.0) == doctest::Approx(std::cosh(std::sqrt(2.0))).epsilon(1e-14));
}
