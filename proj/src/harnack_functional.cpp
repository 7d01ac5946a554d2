#include "abplab/harnack_functional.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace abplab {

namespace {

void require_conformal(const ModelSpace& m) {
  require(m.kind() != ModelKind::GaussianPlane, ErrorKind::InvalidArgument,
          "Harnack functional: only the constant-curvature models are supported");
}

// Closed form as a function of phi, defined for negative phi too.
double closed_of_phi(ModelKind kind, double phi) {
  switch (kind) {
    case ModelKind::Sphere: return std::pow(1.0 + 2.0 * std::cos(phi), 2);
    case ModelKind::Hyperbolic: return std::pow(1.0 + 2.0 * std::cosh(phi), 2);
    default: return 9.0;
  }
}

// Conformal factor of the chart at |z| = t.
double sigma(const ModelSpace& m, double t) {
  switch (m.kind()) {
    case ModelKind::Sphere: return std::sqrt(2.0) / (1.0 + m.k() * t * t);
    case ModelKind::Hyperbolic: return std::sqrt(2.0) / (1.0 - m.k() * t * t);
    default: return std::sqrt(2.0);
  }
}

struct BallSamples {
  std::vector<Vec2> x;
};

BallSamples ball_samples(double theta, int n_ball) {
  const int rings = std::max(8, n_ball / 16);
  BallSamples b;
  b.x.reserve(static_cast<std::size_t>(rings) * n_ball + 1);
  b.x.emplace_back(0.0, 0.0);
  for (int i = 1; i <= rings; ++i) {
    const double r = theta * i / rings;
    for (int j = 0; j < n_ball; ++j) {
      const double a = 2.0 * kPi * j / n_ball;
      b.x.emplace_back(r * std::cos(a), r * std::sin(a));
    }
  }
  return b;
}

double omega_node(int b, int n_boundary) { return 2.0 * kPi * (b + 0.5) / n_boundary; }

Vec2 boundary_point(int b, int n_boundary) {
  const double om = omega_node(b, n_boundary);
  return {std::cos(om), std::sin(om)};
}

double kernel(const Vec2& x, const Vec2& e) { return (1.0 - x.squaredNorm()) / (x - e).squaredNorm(); }

}  // namespace

double poisson_kernel_disc(const Vec2& x, double omega) {
  const double r2 = x.squaredNorm();
  require(r2 < 1.0, ErrorKind::InvalidArgument, "poisson_kernel_disc: |x| must be < 1");
  const Vec2 e(std::cos(omega), std::sin(omega));
  return (1.0 - r2) / (x - e).squaredNorm();
}

double hfun_phi(const ModelSpace& m, double d) {
  require_conformal(m);
  require(d > 0.0 && std::isfinite(d), ErrorKind::InvalidArgument, "Harnack functional: d must be > 0");
  const double phi = std::sqrt(m.k()) * d / std::sqrt(2.0);
  require(phi < 1.0, ErrorKind::CutLocus, "Harnack functional: sqrt(k) d / sqrt(2) must be < 1");
  return phi;
}

double hfun_closed_form(const ModelSpace& m, double d) { return closed_of_phi(m.kind(), hfun_phi(m, d)); }

double theta_ratio(const ModelSpace& m, double d) {
  const double phi = hfun_phi(m, d);
  switch (m.kind()) {
    case ModelKind::Sphere: return std::tan(0.5 * phi) / std::tan(phi);
    case ModelKind::Hyperbolic: return std::tanh(0.5 * phi) / std::tanh(phi);
    default: return 0.5;
  }
}

double chart_radius(const ModelSpace& m, double rho) {
  require_conformal(m);
  require(rho >= 0.0, ErrorKind::InvalidArgument, "chart_radius: rho must be >= 0");
  if (rho == 0.0) return 0.0;
  if (m.kind() == ModelKind::Euclidean) return rho / std::sqrt(2.0);
  using boost::math::quadrature::gauss_kronrod;
  auto dist = [&](double s) {
    return gauss_kronrod<double, 31>::integrate([&](double t) { return sigma(m, t); }, 0.0, s, 8, 1e-15);
  };
  // sigma >= sqrt(2) on the hyperboloid chart, so rho / sqrt(2) already brackets.
  double hi = rho / std::sqrt(2.0);
  while (dist(hi) < rho) hi *= 2.0;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
  const auto r = boost::math::tools::toms748_solve([&](double s) { return dist(s) - rho; }, 0.0, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

HfunResult hfun_numeric(const ModelSpace& m, double d, int n_boundary, int n_ball) {
  require(n_boundary >= 32 && n_ball >= 32, ErrorKind::Resolution, "hfun_numeric: resolution below 32");
  HfunResult res;
  res.model = m.kind();
  res.k = m.k();
  res.d = d;
  res.n_boundary = n_boundary;
  res.n_ball = n_ball;
  res.value_closed = hfun_closed_form(m, d);
  res.theta_used = chart_radius(m, 0.5 * d) / chart_radius(m, d);

  const BallSamples b = ball_samples(res.theta_used, n_ball);
  double best = 0.0;
  for (int w = 0; w < n_boundary; ++w) {
    const Vec2 e = boundary_point(w, n_boundary);
    double lo = kInf, hi = 0.0;
    for (const Vec2& x : b.x) {
      const double p = kernel(x, e);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    best = std::max(best, hi / lo);
  }
  res.value_numeric = best;
  return res;
}

ExpansionFit expansion_fit(const std::vector<double>& d, const std::vector<double>& values, int degree) {
  require(d.size() == values.size(), ErrorKind::InvalidArgument, "expansion_fit: size mismatch");
  require(d.size() >= 6, ErrorKind::InvalidArgument, "expansion_fit: needs at least 6 samples");
  require(degree >= 2 && static_cast<std::size_t>(degree) < d.size(), ErrorKind::InvalidArgument,
          "expansion_fit: degree must be in [2, samples)");
  const int n = static_cast<int>(d.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = values[i];
    for (int j = 0; j <= degree; ++j) A(i, j) = std::pow(d[i], j);
  }
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  require((scale.array() > 0.0).all(), ErrorKind::InvalidArgument, "expansion_fit: zero column");
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As);
  const auto& s = svd.singularValues();
  ExpansionFit fit;
  fit.condition = s[0] / s[s.size() - 1];
  require(std::isfinite(fit.condition) && fit.condition < 1e10, ErrorKind::InvalidArgument,
          "expansion_fit: ill-conditioned, samples too clustered");

  const Eigen::VectorXd c = As.colPivHouseholderQr().solve(y).cwiseQuotient(scale);
  fit.coeffs.assign(c.data(), c.data() + c.size());
  fit.residual = (A * c - y).cwiseAbs().maxCoeff();
  return fit;
}

CheckReport point_mass_domination(const ModelSpace& m, double d, CounterRng rng, int n_mixtures, int max_atoms,
                                  int n_boundary, int n_ball) {
  const HfunResult h = hfun_numeric(m, d, n_boundary, n_ball);
  const BallSamples b = ball_samples(h.theta_used, n_ball);
  double worst = 0.0;
  std::vector<Vec2> atoms;
  std::vector<double> w;
  for (int t = 0; t < n_mixtures; ++t) {
    const int na = 1 + static_cast<int>(rng.uniform() * max_atoms);
    atoms.resize(na);
    w.resize(na);
    double tot = 0.0;
    for (int i = 0; i < na; ++i) {
      atoms[i] = boundary_point(static_cast<int>(rng.uniform() * n_boundary), n_boundary);
      w[i] = rng.uniform() + 1e-3;
      tot += w[i];
    }
    double lo = kInf, hi = 0.0;
    for (const Vec2& x : b.x) {
      double u = 0.0;
      for (int i = 0; i < na; ++i) u += w[i] / tot * kernel(x, atoms[i]);
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
    worst = std::max(worst, hi / lo);
  }
  auto rep = inequality("point-mass domination", "Harnack functional", worst, h.value_numeric, 0.0, 1e-9);
  rep.diagnostics["mixtures"] = n_mixtures;
  rep.diagnostics["d"] = d;
  return rep;
}

Reports hfun_checks(const ModelSpace& m, double d, CounterRng rng) {
  const char* anchor = "Harnack functional";
  Reports out;
  const HfunResult h = hfun_numeric(m, d);
  auto up = inequality("Harnack functional numeric below closed form", anchor, h.value_numeric, h.value_closed, 1e-6);
  up.diagnostics["d"] = d;
  up.diagnostics["theta"] = h.theta_used;
  out.push_back(up);
  auto near = identity("Harnack functional numeric vs closed form", anchor, h.value_numeric, h.value_closed, 1e-3);
  near.diagnostics["d"] = d;
  out.push_back(near);

  const double th = theta_ratio(m, d);
  out.push_back(identity("theta ratio from chart integral", "give a sharp estimate", h.theta_used, th, 1e-12));
  out.push_back(identity("theta ratio identity", "give a sharp estimate", std::pow((1.0 + th) / (1.0 - th), 2),
                         h.value_closed, 1e-12));

  const double phi = hfun_phi(m, d);
  out.push_back(identity("Harnack functional even extension", anchor, closed_of_phi(m.kind(), -phi),
                         closed_of_phi(m.kind(), phi), 1e-15));
  out.push_back(point_mass_domination(m, d, rng));
  return out;
}

}  // namespace abplab
