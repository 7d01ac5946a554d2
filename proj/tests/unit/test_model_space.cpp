#include "abplab/model_space.hpp"
#include "abplab/polar_grid.hpp"
#include "abplab/rng.hpp"
#include "abplab/scalar_field.hpp"

#include "doctest.h"

#include <cmath>

using namespace abplab;

namespace {

Point sphere_point(double x, double y, double z) { return Point{Vec3(x, y, z)}; }

}  // namespace

TEST_CASE("distance examples") {
  const auto e = ModelSpace::euclidean();
  CHECK(distance(e, Point{Vec3(0, 0, 0)}, Point{Vec3(3, 4, 0)}) == doctest::Approx(5.0));

  const auto s = ModelSpace::sphere(1.0);
  CHECK(distance(s, sphere_point(0, 0, 1), sphere_point(1, 0, 0)) == doctest::Approx(kPi / 2));

  // -<p,q>_Minkowski = cosh 1 for these two points.
  const auto h = ModelSpace::hyperbolic(1.0);
  const Point p{Vec3(std::cosh(1.0), std::sinh(1.0), 0.0)};
  const Point q{Vec3(1.0, 0.0, 0.0)};
  CHECK(-h.inner(p.coords, q.coords) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(distance(h, p, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sphere antipodes are rejected") {
  const auto s = ModelSpace::sphere(1.0);
  CHECK_THROWS_AS(distance(s, sphere_point(0, 0, 1), sphere_point(0, 0, -1)), Error);
}

TEST_CASE("exp and log on the sphere") {
  const auto s = ModelSpace::sphere(1.0);
  const Point pole = sphere_point(0, 0, 1);
  const Point q = exp_map(s, TangentVector{pole, Vec3(kPi / 2, 0, 0)});
  CHECK(q.coords[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(q.coords[2]) < 1e-14);

  const TangentVector v = log_map(s, pole, sphere_point(1, 0, 0));
  CHECK(v.components.norm() == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(v.components[0] == doctest::Approx(kPi / 2).epsilon(1e-12));

  const auto zero = exp_map(s, TangentVector{pole, Vec3::Zero()});
  CHECK((zero.coords - pole.coords).norm() < 1e-15);
}

TEST_CASE("exp/log round trip and triangle inequality on random data") {
  const ModelSpace models[] = {ModelSpace::euclidean(), ModelSpace::sphere(1.0), ModelSpace::hyperbolic(1.0),
                               ModelSpace::sphere(4.0), ModelSpace::hyperbolic(0.25)};
  CounterRng rng(7);
  for (const auto& m : models) {
    const double cap = std::isfinite(m.cut_radius()) ? 0.9 * m.cut_radius() : 3.0;
    for (int t = 0; t < 200; ++t) {
      const Point p = m.from_plane(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
      const auto fr = m.tangent_frame(p);
      const double len = cap * rng.uniform();
      const double ang = 2 * kPi * rng.uniform();
      const Vec3 v = len * (std::cos(ang) * fr[0] + std::sin(ang) * fr[1]);
      const Point q = exp_map(m, TangentVector{p, v});
      CHECK(std::abs(m.constraint_residual(q)) < 1e-10);
      CHECK(distance(m, p, q) == doctest::Approx(len).epsilon(1e-9));
      const TangentVector back = log_map(m, p, q);
      CHECK((back.components - v).norm() < 1e-8 * std::max(1.0, len));

      const Point r = m.from_plane(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
      CHECK(distance(m, p, r) <= distance(m, p, q) + distance(m, q, r) + 1e-12);
      CHECK(distance(m, p, r) == doctest::Approx(distance(m, r, p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ball measures") {
  CHECK(ball_measure(ModelSpace::euclidean(), Point{}, 2.0).value == doctest::Approx(4 * kPi));
  const auto s = ModelSpace::sphere(1.0);
  CHECK(ball_measure(s, s.origin(), 1.0).value == doctest::Approx(2 * kPi * (1 - std::cos(1.0))));
  const double lam = 0.7, r = 1.3;
  const auto g = ModelSpace::gaussian_plane(lam);
  CHECK(ball_measure(g, g.origin(), r).value ==
        doctest::Approx(2 * kPi / lam * (1 - std::exp(-lam * r * r / 2))).epsilon(1e-12));
}

TEST_CASE("Ricci lower bounds") {
  CHECK(ricci_lower_bound(ModelSpace::euclidean(), 2.0, 1.0) == 0.0);
  CHECK(ricci_lower_bound(ModelSpace::hyperbolic(1.0), 2.0, 1.0) == doctest::Approx(-1.0));
  CHECK(ricci_lower_bound(ModelSpace::sphere(2.0), 2.0, 0.5) == doctest::Approx(2.0));
  const auto g = ModelSpace::gaussian_plane(1.0);
  CHECK(ricci_lower_bound(g, 4.0, 1.0) == doctest::Approx(0.5));
  CHECK(ricci_lower_bound(g, kInf, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ricci_lower_bound(g, 2.0, 1.0), Error);
}

TEST_CASE("polar grid quadrature") {
  const auto e = ModelSpace::euclidean();
  const GeodesicBallGrid ge(e, e.origin(), 1.0, 256, 256);
  CHECK(ge.total_measure() == doctest::Approx(kPi).epsilon(1e-6));
  std::vector<double> rho2(ge.size());
  for (std::size_t k = 0; k < ge.size(); ++k) rho2[k] = ge.node(k).rho * ge.node(k).rho;
  CHECK(ge.integrate(rho2) == doctest::Approx(kPi / 2).epsilon(1e-4));

  const auto s = ModelSpace::sphere(1.0);
  const GeodesicBallGrid gs(s, s.origin(), 1.0, 256, 256);
  CHECK(gs.total_measure() == doctest::Approx(2 * kPi * (1 - std::cos(1.0))).epsilon(1e-6));
}

TEST_CASE("weighted Laplacian of radial profiles") {
  const auto g = ModelSpace::gaussian_plane(0.8);
  auto grid = std::make_shared<const GeodesicBallGrid>(g, g.origin(), 1.0, 16, 16);
  FieldFunctions f;
  f.value = [](const Point& p) { return 0.5 * p.coords.squaredNorm(); };
  const ScalarField u = ScalarField::closed_form(grid, f);
  const Point p{Vec3(0.3, -0.4, 0)};
  CHECK(laplacian_nu(g, u, p) == doctest::Approx(2 - 0.8 * 0.25).epsilon(1e-5));

  // f(rho) = rho^3 on the unit sphere against f'' + cot(rho) f'.
  const auto s = ModelSpace::sphere(1.0);
  const Point c = s.origin();
  const Point q = s.from_plane(0.6, 0.2);
  const double rho = distance(s, c, q);
  const double expect = 6 * rho + 3 * rho * rho / std::tan(rho);
  CHECK(radial_laplacian_nu(s, c, q, 3 * rho * rho, 6 * rho) == doctest::Approx(expect).epsilon(1e-12));
  auto sgrid = std::make_shared<const GeodesicBallGrid>(s, c, 1.0, 16, 16);
  FieldFunctions cube;
  cube.value = [s, c](const Point& x) { return std::pow(distance(s, c, x), 3); };
  const ScalarField uc = ScalarField::closed_form(sgrid, cube);
  CHECK(laplacian_nu(s, uc, q) == doctest::Approx(expect).epsilon(1e-4));
}
