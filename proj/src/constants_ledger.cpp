#include "abplab/constants_ledger.hpp"

#include "abplab/common.hpp"

#include <cmath>
#include <limits>

namespace abplab {

namespace {

constexpr double kE = 2.71828182845904523536;
const char* kAnchor = "constants estimate";

double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

// log(-expm1(-x)) for x > 0, accurate for tiny x.
double log_one_minus_exp_neg(double x, double log_x) {
  if (x < 1e-8) return log_x + std::log1p(-0.5 * x);
  return std::log(-std::expm1(-x));
}

}  // namespace

double calH(double t) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "calH: negative argument");
  if (t < 1e-4) {
    const double t2 = t * t;
    return 1.0 + t2 / 3.0 - t2 * t2 / 45.0;
  }
  return t / std::tanh(t);
}

double calS(double t) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "calS: negative argument");
  if (t < 1e-4) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sinh(t) / t;
}

void validate(const CurvatureParams& p) {
  require(p.K >= 0.0 && std::isfinite(p.K), ErrorKind::InvalidArgument, "K must be finite and >= 0");
  require(p.N >= 2.0, ErrorKind::InvalidArgument, "N must be >= 2");
  require(p.R > 0.0 && std::isfinite(p.R), ErrorKind::InvalidArgument, "R must be finite and > 0");
}

double omega_KN(double K, double N) {
  if (!std::isfinite(N)) return 0.0;
  return 2.0 * std::sqrt(K / N);
}

double log_doubling_const(double K, double N, double r) {
  return N * std::log(2.0) + 4.0 * r * std::sqrt(N * K);
}

double doubling_const(double K, double N, double r) { return std::exp(log_doubling_const(K, N, r)); }

ConstantsLedger build_ledger(const CurvatureParams& params) {
  validate(params);
  require(std::isfinite(params.N), ErrorKind::InvalidArgument, "the full ledger needs N < infinity");
  const double K = params.K, N = params.N, R = params.R;
  ConstantsLedger L;
  L.params = params;
  L.omega = omega_KN(K, N);
  L.log_doubling_R = log_doubling_const(K, N, R);
  L.log_doubling_2R = log_doubling_const(K, N, 2 * R);
  L.log_doubling_4R = log_doubling_const(K, N, 4 * R);
  L.doubling_R = std::exp(L.log_doubling_R);
  L.doubling_2R = std::exp(L.log_doubling_2R);
  L.doubling_4R = std::exp(L.log_doubling_4R);
  L.eta = L.log_doubling_2R / (N * std::log(2.0));
  L.alpha = N * calH(L.omega * R);

  const double log18 = std::log(18.0);
  L.log_big_m = std::log(2.0) + 2.0 * std::log(L.alpha) + L.alpha * log18;
  L.big_m = std::exp(L.log_big_m);
  L.log_mu = -N * (3.0 * log18 + 2.0 * std::log(L.alpha) + L.alpha * log18 + log_cosh(L.omega * R)) -
             4.0 * L.log_doubling_4R;
  L.mu = std::exp(L.log_mu);
  L.delta0 = 1.0 / (2.0 * std::exp(4.0 / N * L.log_doubling_2R) * calS(L.omega * R));

  // p0 = (1 - log[1 + (e-1)(1-mu)]) / log M = -log1p(-(e-1) mu / e) / log M.
  const double c = (kE - 1.0) / kE;
  if (L.mu > 1e-290) {
    L.p0 = -std::log1p(-c * L.mu) / L.log_big_m;
    L.log_p0 = std::log(L.p0);
  } else {
    L.log_p0 = std::log(c) + L.log_mu - std::log(L.log_big_m);
    L.p0 = std::exp(L.log_p0);
  }
  L.inv_p0 = std::exp(-L.log_p0);
  L.p1 = L.p0 / (N * L.eta);
  L.log_p1 = L.log_p0 - std::log(N * L.eta);
  L.log_c0 = 2.0 * L.inv_p0;
  L.log_c3 = std::log(2.0) + L.log_doubling_2R + (L.log_big_m * L.inv_p0 - L.log_mu) / N;

  // sum_k (1 + 1/M)^{-k p1} = 1 / (1 - e^{-x}), x = p1 log(1 + 1/M).
  const double l1 = std::log1p(1.0 / L.big_m);
  const double log_x = L.log_p1 + std::log(l1);
  const double x = std::exp(log_x);
  L.log_series = -log_one_minus_exp_neg(x, log_x);

  const double A = std::log(3.0) + L.log_c3 + L.log_series;
  const double inv_p1 = std::exp(-L.log_p1);
  L.log_c2 = A * inv_p1 - std::log(L.delta0);
  const double ll = std::log(A) - L.log_p1;
  L.loglog_c2 = ll + std::log1p(-std::log(L.delta0) * std::exp(-ll));
  return L;
}

Reports verify_ledger(const ConstantsLedger& L) {
  Reports out;
  const double N = L.params.N;

  // i) 1 + (M^p0 - 1) sum_k (M^p0 (1 - mu))^k = e, summed in closed form.
  {
    const double x = L.p0 * L.log_big_m;
    const double q_log = x + std::log1p(-L.mu);  // log of the series ratio
    if (q_log >= 0.0) throw Error(ErrorKind::Divergence, "ledger: M^p0 (1 - mu) >= 1");
    const double lhs = 1.0 + std::expm1(x) / (-std::expm1(q_log));
    auto r = identity("geometric identity", std::string(kAnchor) + " i)", lhs, kE, 0.0, 1e-10);
    r.diagnostics["series_ratio_log"] = q_log;
    out.push_back(r);
  }
  // ii) proof form: e^{1/p0} delta0 >= 1, compared in log scale.
  {
    auto r = inequality("delta0 bound", std::string(kAnchor) + " ii)", -std::log(L.delta0), L.inv_p0);
    r.scale = "log";
    r.diagnostics["delta0"] = L.delta0;
    out.push_back(r);
  }
  // iii) p0 >= mu / (4 log M).
  {
    const double lhs = L.log_mu - std::log(4.0) - std::log(L.log_big_m);
    auto r = inequality("p0 lower bound", std::string(kAnchor) + " iii)", lhs, L.log_p0);
    r.scale = "log";
    r.diagnostics["p0"] = L.p0;
    out.push_back(r);
  }
  // iv) C2 = C1(p0) is a finite positive number: log log C2 is a finite real.
  {
    auto r = inequality("C2 finite", std::string(kAnchor) + " iv)", L.loglog_c2,
                        std::numeric_limits<double>::max());
    r.scale = "loglog";
    r.diagnostics["log_c2"] = L.log_c2;
    r.diagnostics["log_c3"] = L.log_c3;
    out.push_back(r);
  }
  // D_2R (M / mu^{1/p0}) (1/C3)^{N eta / p0} < 1.
  {
    const double lhs = L.log_doubling_2R + L.log_big_m + L.inv_p0 * (-L.log_mu - N * L.eta * L.log_c3);
    auto r = inequality("C3 estimate", "C3 estimate", lhs, 0.0);
    r.scale = "log";
    out.push_back(r);
  }
  return out;
}

}  // namespace abplab
