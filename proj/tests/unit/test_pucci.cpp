#include "abplab/pucci.hpp"

#include "doctest.h"

#include <cmath>

using namespace abplab;

TEST_CASE("Pucci operators on small matrices") {
  const auto a = pucci(Mat2::Identity(), 3.0);
  CHECK(a.m_minus == doctest::Approx(2.0));
  CHECK(a.m_plus == doctest::Approx(6.0));
  Mat2 h;
  h << 1, 0, 0, -1;
  const auto b = pucci(h, 2.0);
  CHECK(b.m_minus == doctest::Approx(-1.0));
  CHECK(b.m_plus == doctest::Approx(1.0));
}

TEST_CASE("Pucci duality and ordering on random matrices") {
  CounterRng rng(3);
  for (int t = 0; t < 500; ++t) {
    Mat2 h;
    h(0, 0) = rng.uniform(-2, 2);
    h(1, 1) = rng.uniform(-2, 2);
    h(0, 1) = h(1, 0) = rng.uniform(-2, 2);
    const double th = rng.uniform(1, 4);
    const auto p = pucci(h, th);
    const auto q = pucci(-h, th);
    CHECK(p.m_minus == doctest::Approx(-q.m_plus).epsilon(1e-14));
    CHECK(p.m_minus <= h.trace() + 1e-14);
    CHECK(h.trace() <= p.m_plus + 1e-14);
  }
  for (const auto& r : pucci_algebra_check(CounterRng(5), 200, 2.5)) CHECK_MESSAGE(r.pass, r.name);
  for (const auto& r : pucci_extremal_check(CounterRng(6), 50, 50, 2.5)) CHECK_MESSAGE(r.pass, r.name);
  for (const auto& r : pucci_contact_suite(CounterRng(8), 200, 2.5)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("E_theta on model spaces") {
  CHECK(e_theta(ModelSpace::euclidean(), 1.0, 3.0) == doctest::Approx(4.0));
  // Hyperbolic: transverse eigenvalue rho coth rho, largest at rho = r.
  const double th = 2.0;
  CHECK(e_theta(ModelSpace::hyperbolic(1.0), 1.0, th) ==
        doctest::Approx((th - 1) * (1 + 1 / std::tanh(1.0))).epsilon(1e-8));
  // Sphere: rho cot rho <= 1, so the radial eigenvalue 1 dominates.
  CHECK(e_theta(ModelSpace::sphere(1.0), 1.0, th) == doctest::Approx((th - 1) * 2).epsilon(1e-8));
}
