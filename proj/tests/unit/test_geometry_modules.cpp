#include "abplab/barrier.hpp"
#include "abplab/contact_sets.hpp"
#include "abplab/experiments.hpp"
#include "abplab/jacobi_transport.hpp"
#include "abplab/measure_tools.hpp"

#include "doctest.h"

#include <cmath>
#include <memory>
#include <set>

using namespace abplab;

TEST_CASE("contact set of a quadratic matches the closed-form contact map") {
  const auto m = ModelSpace::euclidean();
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 1.0, 64, 64);
  const double a = 1.0, b = 1.0;
  const ScalarField u = ScalarField::closed_form(g, quadratic_field(m, m.origin(), b));
  const auto E = ball_vertices(m, m.origin(), 0.4, 8, 8);
  const ContactSet cs = compute_contact_set(u, a, E);
  CHECK(cs.covers_all_vertices());
  CHECK_FALSE(cs.touches_boundary(*g));
  const double h = g->dr() + g->dtheta();
  for (const auto& p : cs.pairs) {
    const Vec3 expect = a / (a + b) * p.y.coords;
    CHECK((p.x.coords - expect).norm() < h);
    // The analytic identity holds exactly at the analytic contact point.
    ContactPair exact = p;
    exact.x = Point{expect};
    CHECK(gradient_contact_residual(exact, u) < 1e-10);
  }

  const ContactSet brute = compute_contact_set_bruteforce(u, a, E);
  CHECK(brute.contact_nodes() == cs.contact_nodes());
}

TEST_CASE("constant field touches at the vertices") {
  const auto m = ModelSpace::sphere(1.0);
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 0.8, 32, 32);
  const ScalarField u(g, std::vector<double>(g->size(), 2.0));
  std::vector<Point> E = {g->node(3, 5).point, g->node(10, 20).point};
  const ContactSet cs = compute_contact_set(u, 1.0, E);
  REQUIRE(cs.pairs.size() == 2);
  CHECK(cs.pairs[0].x_index == static_cast<std::size_t>(g->index(3, 5)));
  CHECK(cs.pairs[1].x_index == static_cast<std::size_t>(g->index(10, 20)));
}

TEST_CASE("contact set of -|x| sits on the unit circle") {
  const auto m = ModelSpace::euclidean();
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 1.5, 60, 32);
  std::vector<double> vals(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) vals[k] = -g->node(k).rho;
  const ScalarField u(g, vals);
  const ContactSet cs = compute_contact_set(u, 1.0, {m.origin()});
  REQUIRE(!cs.pairs.empty());
  for (const auto& p : cs.pairs) CHECK(std::abs(g->node(p.x_index).rho - 1.0) <= 0.5 * g->dr() + 1e-12);
}

TEST_CASE("contact sets are monotone in the vertex set") {
  const auto m = ModelSpace::hyperbolic(1.0);
  auto g = std::make_shared<const GeodesicBallGrid>(m, m.origin(), 1.0, 32, 32);
  CounterRng rng(11);
  const ScalarField u = ScalarField::closed_form(g, random_bump_field(m, m.origin(), 1.0, 1.0, rng));
  const auto F = ball_vertices(m, m.origin(), 0.3, 8, 8);
  std::vector<Point> E(F.begin(), F.begin() + F.size() / 2);
  const auto small = compute_contact_set(u, 2.0, E).contact_nodes();
  const auto big = compute_contact_set(u, 2.0, F).contact_nodes();
  const std::set<std::size_t> bigset(big.begin(), big.end());
  for (auto k : small) CHECK(bigset.count(k) == 1);
}

TEST_CASE("Jacobi fields in closed form") {
  const auto e = ModelSpace::euclidean();
  const double b = 0.7;
  const auto s = integrate_jacobi(e, e.origin(), b * Mat2::Identity(), TangentVector{e.origin(), Vec3(0.6, 0.2, 0)});
  for (std::size_t i = 0; i < s.times.size(); i += 16) {
    const double t = s.times[i];
    CHECK(s.det(i) == doctest::Approx((1 + t * b) * (1 + t * b)).epsilon(1e-10));
  }
  const auto d2 = dn_functional(integrate_jacobi(e, e.origin(), Mat2::Identity(), TangentVector{e.origin(), Vec3(1, 0, 0)}), 2.0);
  CHECK(d2.back() == doctest::Approx(2.0).epsilon(1e-10));

  const auto sp = ModelSpace::sphere(1.0);
  const double len = 1.2;
  const auto js = integrate_jacobi(sp, sp.origin(), Mat2::Zero(), TangentVector{sp.origin(), Vec3(len, 0, 0)});
  for (std::size_t i = 0; i < js.times.size(); i += 16)
    CHECK(js.det(i) == doctest::Approx(std::cos(len * js.times[i])).epsilon(1e-8));

  const Mat2 Rs = curvature_matrix(sp, 1.0);
  CHECK(Rs(0, 0) == 0.0);
  CHECK(Rs(1, 1) == doctest::Approx(1.0));
  CHECK(curvature_matrix(ModelSpace::hyperbolic(1.0), 1.0)(1, 1) == doctest::Approx(-1.0));
  for (const auto& r : verify_comparison(js, sp, 2.0, 0.0)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("barrier profile") {
  const auto m = ModelSpace::euclidean();
  const auto s = make_barrier(m, m.origin(), 1.0, 2.0);
  CHECK(barrier_dh(s, 0.0) == 0.0);
  CHECK(std::abs(barrier_h(s, 1.0 / 18 - 1e-13)) < 1e-6);
  CHECK(std::abs(barrier_h(s, 1.0 / 18 + 1e-13)) < 1e-6);
  CHECK(barrier_h(s, 0.5) == doctest::Approx(320.0));
  CHECK(s.beta0 == doctest::Approx(-756.0));
  CHECK(barrier_psi(s, m.origin()) == doctest::Approx(-756.0));
  CHECK(barrier_psi(s, Point{Vec3(0.75, 0, 0)}) == doctest::Approx(324.0 - 16.0 / 9.0));
  for (double alpha : {2.0, 3.1, 5.0}) {
    const auto j = junction_residual(make_barrier(m, m.origin(), 1.0, alpha));
    // Each piece is of size 18^alpha (times 18 per derivative) at the junction.
    const double scale = std::pow(18.0, alpha);
    CHECK(j.value <= 1e-12 * scale);
    CHECK(j.first <= 1e-12 * scale * 18 * alpha);
    CHECK(j.second <= 1e-12 * scale * 18 * 18 * alpha * (alpha + 1));
    CHECK(j.value_scale >= scale);
  }
}

TEST_CASE("Ricci comparison on the model spaces") {
  const ModelSpace hyp = ModelSpace::hyperbolic(1.0);
  for (const auto& r : check_ricci_comparison(hyp, {1.0, 2.0, 1.0}, hyp.origin(), 2.0)) CHECK_MESSAGE(r.pass, r.name);
  const ModelSpace sph = ModelSpace::sphere(1.0);
  for (const auto& r : check_ricci_comparison(sph, {0.0, 2.0, 1.0}, sph.origin(), 1.5)) CHECK_MESSAGE(r.pass, r.name);
  // Independent closed forms: 1 + rho coth(rho) <= 2 H(rho) for the hyperbolic plane.
  for (double rho = 0.01; rho <= 2.0; rho += 0.01) {
    CHECK(1 + rho / std::tanh(rho) <= 2 * calH(rho) + 1e-12);
    if (rho < kPi / 2) CHECK(1 + rho / std::tan(rho) <= 2.0);
  }
}

TEST_CASE("Lp bracketing for a two-level field") {
  const double C = 2.0;
  const std::vector<double> f = {1.0, C * C};
  const std::vector<double> w = {0.5, 0.5};
  for (const auto& r : lp_distribution_check(f, w, C, 1.0)) CHECK_MESSAGE(r.pass, r.name);
  CounterRng rng(4);
  std::vector<double> g(500), gw(500, 1.0);
  for (auto& x : g) x = std::exp(rng.normal());
  for (const auto& r : lp_distribution_check(g, gw, 2.0, 0.5)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("Vitali selection on random balls") {
  CounterRng rng(9);
  BallFamily fam;
  for (int i = 0; i < 200; ++i) {
    const double rr = std::sqrt(rng.uniform()), th = 2 * kPi * rng.uniform();
    fam.balls.push_back({Point{Vec3(rr * std::cos(th), rr * std::sin(th), 0)}, rng.uniform(0.01, 0.2)});
  }
  const auto sel = vitali_cover(fam);
  CHECK(!sel.empty());
  for (const auto& r : verify_vitali(fam, sel)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("doubling on the sphere and hyperbolic plane") {
  const auto s = ModelSpace::sphere(1.0);
  for (double r = 0.05; r < kPi / 4; r += 0.05)
    CHECK(ball_measure(s, s.origin(), 2 * r).value / ball_measure(s, s.origin(), r).value < 4.0);
  const auto h = ModelSpace::hyperbolic(1.0);
  for (const auto& r : doubling_check(h, {1.0, 2.0, 1.0}, h.origin(), 0.5, 0.25)) CHECK_MESSAGE(r.pass, r.name);
  const double ratio = ball_measure(h, h.origin(), 1.0).value / ball_measure(h, h.origin(), 0.5).value;
  CHECK(ratio <= 4 * std::cosh(2.0));
}
