#include "abplab/common.hpp"
#include "abplab/constants_ledger.hpp"

#include "doctest.h"

#include <cmath>

using namespace abplab;

TEST_CASE("H and S") {
  CHECK(calH(0.0) == 1.0);
  CHECK(calS(0.0) == 1.0);
  CHECK(calH(2.0) == doctest::Approx(2.0 / std::tanh(2.0)).epsilon(1e-15));
  CHECK(calH(2.0) == doctest::Approx(2.0746294).epsilon(1e-7));
  CHECK(calS(1.0) * calH(1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
  CHECK(calH(1e-9) == doctest::Approx(1.0));
}

TEST_CASE("ledger at K=0, N=2, R=1") {
  const auto L = build_ledger({0.0, 2.0, 1.0});
  CHECK(L.omega == 0.0);
  CHECK(L.doubling_R == doctest::Approx(4.0));
  CHECK(L.eta == doctest::Approx(1.0));
  CHECK(L.alpha == doctest::Approx(2.0));
  CHECK(L.big_m == doctest::Approx(2592.0));
  CHECK(L.delta0 == doctest::Approx(1.0 / 32));

  // p0 from its defining formula, evaluated independently.
  const double mu = L.mu;
  const double p0 = (1 - std::log1p((std::exp(1.0) - 1) * (1 - mu))) / std::log(2592.0);
  CHECK(L.p0 == doctest::Approx(p0).epsilon(1e-6));
  CHECK(L.p0 > 0.0);
  CHECK(L.p0 < 1e-10);
  CHECK(L.log_c0 == doctest::Approx(2.0 / L.p0).epsilon(1e-12));
  CHECK(std::isfinite(L.loglog_c2));
  for (const auto& r : verify_ledger(L)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("alpha at K=1, N=2, R=1") {
  const auto L = build_ledger({1.0, 2.0, 1.0});
  CHECK(L.omega == doctest::Approx(std::sqrt(2.0)));
  CHECK(L.alpha == doctest::Approx(2 * std::sqrt(2.0) / std::tanh(std::sqrt(2.0))).epsilon(1e-14));
  CHECK(L.alpha == doctest::Approx(3.1837833).epsilon(1e-7));
}

TEST_CASE("ledger checks on a parameter grid") {
  for (double K : {0.0, 1.0, 2.0})
    for (double N : {2.0, 3.5, 5.0})
      for (double R : {0.5, 1.0, 2.0}) {
        const auto L = build_ledger({K, N, R});
        for (const auto& r : verify_ledger(L)) CHECK_MESSAGE(r.pass, r.name << " K=" << K << " N=" << N << " R=" << R);
      }
}

TEST_CASE("doubling constant is nondecreasing in the radius") {
  for (double K : {0.0, 0.5, 2.0}) {
    double prev = 0.0;
    for (double r = 0.1; r < 4; r += 0.1) {
      const double d = log_doubling_const(K, 3.0, r);
      CHECK(d >= prev - 1e-14);
      prev = d;
    }
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(validate({-1.0, 2.0, 1.0}), Error);
  CHECK_THROWS_AS(validate({0.0, 1.5, 1.0}), Error);
  CHECK_THROWS_AS(validate({0.0, 2.0, 0.0}), Error);
  CHECK_NOTHROW(validate({0.0, kInf, 1.0}));
}
