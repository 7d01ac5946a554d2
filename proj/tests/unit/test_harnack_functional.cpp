#include "abplab/harnack_functional.hpp"

#include "doctest.h"

#include <cmath>

using namespace abplab;

namespace {

// d with sqrt(k) d / sqrt(2) = phi.
double d_of_phi(double k, double phi) { return phi * std::sqrt(2.0) / std::sqrt(k); }

}  // namespace

TEST_CASE("Poisson kernel of the disc") {
  CHECK(poisson_kernel_disc(Vec2(0.5, 0.0), 0.0) == doctest::Approx(3.0));
  CHECK(poisson_kernel_disc(Vec2(-0.5, 0.0), 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(poisson_kernel_disc(Vec2(0.0, 0.0), 1.234) == doctest::Approx(1.0));
  CHECK_THROWS_AS(poisson_kernel_disc(Vec2(1.0, 0.0), 0.0), Error);
}

TEST_CASE("closed forms") {
  CHECK(hfun_closed_form(ModelSpace::euclidean(), 0.3) == 9.0);
  const double phi = 0.5;
  const double sph = std::pow(1 + 2 * std::cos(phi), 2);
  const double hyp = std::pow(1 + 2 * std::cosh(phi), 2);
  CHECK(sph == doctest::Approx(7.59093).epsilon(1e-6));
  CHECK(hyp == doctest::Approx(10.596665).epsilon(1e-6));
  CHECK(hfun_closed_form(ModelSpace::sphere(1.0), d_of_phi(1.0, phi)) == doctest::Approx(sph).epsilon(1e-14));
  CHECK(hfun_closed_form(ModelSpace::hyperbolic(1.0), d_of_phi(1.0, phi)) == doctest::Approx(hyp).epsilon(1e-14));
  CHECK_THROWS_AS(hfun_closed_form(ModelSpace::sphere(1.0), d_of_phi(1.0, 1.0)), Error);
  CHECK_THROWS_AS(hfun_closed_form(ModelSpace::gaussian_plane(1.0), 0.2), Error);
}

TEST_CASE("theta ratio") {
  const double phi = 0.5;
  const double t = std::tan(phi / 2);
  CHECK(theta_ratio(ModelSpace::sphere(1.0), d_of_phi(1.0, phi)) == doctest::Approx((1 - t * t) / 2).epsilon(1e-14));
  CHECK(theta_ratio(ModelSpace::sphere(1.0), d_of_phi(1.0, phi)) == doctest::Approx(0.467401).epsilon(1e-6));
  CHECK(theta_ratio(ModelSpace::euclidean(), 0.4) == 0.5);
  CounterRng rng(2);
  for (int i = 0; i < 20; ++i) {
    const double p = rng.uniform(0.01, 0.99);
    const double tt = std::tan(p / 2);
    CHECK(std::abs((3 - tt * tt) / (1 + tt * tt) - (1 + 2 * std::cos(p))) < 1e-12);
    for (const auto& m : {ModelSpace::sphere(1.0), ModelSpace::hyperbolic(2.0)}) {
      const double d = d_of_phi(m.k(), p);
      const double th = theta_ratio(m, d);
      CHECK(std::pow((1 + th) / (1 - th), 2) == doctest::Approx(hfun_closed_form(m, d)).epsilon(1e-12));
      CHECK(chart_radius(m, d / 2) / chart_radius(m, d) == doctest::Approx(th).epsilon(1e-12));
    }
  }
}

TEST_CASE("numeric maximisation matches the closed form") {
  const auto e = hfun_numeric(ModelSpace::euclidean(), 0.5);
  CHECK(e.value_numeric == doctest::Approx(9.0).epsilon(1e-3));
  CHECK(e.value_numeric <= 9.0 * (1 + 1e-12));
  for (const auto& m : {ModelSpace::sphere(1.0), ModelSpace::hyperbolic(1.0)}) {
    const auto r = hfun_numeric(m, d_of_phi(1.0, 0.5));
    CHECK(r.value_numeric == doctest::Approx(r.value_closed).epsilon(1e-3));
  }
  CHECK_THROWS_AS(hfun_numeric(ModelSpace::euclidean(), 0.5, 16, 512), Error);
}

TEST_CASE("point masses dominate mixtures") {
  const auto rep = point_mass_domination(ModelSpace::hyperbolic(1.0), 0.6, CounterRng(4), 40, 6, 128, 128);
  CHECK(rep.pass);
}

TEST_CASE("small-radius expansion") {
  for (const auto& [m, a2] : {std::pair{ModelSpace::sphere(1.0), -3.0}, std::pair{ModelSpace::hyperbolic(1.0), 3.0}}) {
    std::vector<double> d, v;
    for (int i = 1; i <= 16; ++i) {
      d.push_back(0.1 * i / 16);
      v.push_back(hfun_closed_form(m, d.back()));
    }
    const auto fit = expansion_fit(d, v, 4);
    CHECK(fit.coeffs[0] == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(std::abs(fit.coeffs[1]) <= 1e-6);
    CHECK(fit.coeffs[2] == doctest::Approx(a2).epsilon(1e-2));
  }
  CHECK_THROWS_AS(expansion_fit({0.1, 0.2, 0.3}, {1, 2, 3}, 2), Error);
  CHECK_THROWS_AS(expansion_fit(std::vector<double>(8, 0.1), std::vector<double>(8, 1.0), 3), Error);
}
