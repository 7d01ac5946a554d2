#include "abplab/jacobi_transport.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace abplab {

namespace {

double min_eig(const Mat2& A) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (A + A.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double max_eig(const Mat2& A) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (A + A.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[1];
}

}  // namespace

Point geodesic_position(const ModelSpace& m, const JacobiState& s, double t) {
  if (s.speed == 0.0) return s.base;
  return geodesic_point(m, s.base, s.frame[0], t * s.speed);
}

Vec3 geodesic_velocity(const ModelSpace& m, const JacobiState& s, double t) {
  const double L = s.speed;
  if (L == 0.0) return Vec3::Zero();
  const double q = std::sqrt(m.k());
  const Vec3& x = s.base.coords;
  const Vec3& d = s.frame[0];
  switch (m.kind()) {
    case ModelKind::Sphere: return L * (-q * std::sin(q * L * t) * x + std::cos(q * L * t) * d);
    case ModelKind::Hyperbolic: return L * (q * std::sinh(q * L * t) * x + std::cosh(q * L * t) * d);
    default: return L * d;
  }
}

Mat2 curvature_matrix(const ModelSpace& m, double speed) {
  Mat2 R = Mat2::Zero();
  if (m.kind() == ModelKind::Sphere || m.kind() == ModelKind::Hyperbolic) R(1, 1) = m.curvature() * speed * speed;
  return R;
}

void integrate_matrix_ode(const std::function<Mat2(double)>& R, const Mat2& Y0, const Mat2& Z0, int n_steps,
                          std::vector<Mat2>& Y, std::vector<Mat2>& Z) {
  require(n_steps >= 1, ErrorKind::InvalidArgument, "integrate_matrix_ode: n_steps >= 1");
  const double h = 1.0 / n_steps;
  Y.assign(n_steps + 1, Mat2::Zero());
  Z.assign(n_steps + 1, Mat2::Zero());
  Y[0] = Y0;
  Z[0] = Z0;
  for (int i = 0; i < n_steps; ++i) {
    const double t = i * h;
    const Mat2 Ra = R(t), Rb = R(t + 0.5 * h), Rc = R(t + h);
    const Mat2& y = Y[i];
    const Mat2& z = Z[i];
    const Mat2 k1y = z, k1z = -Ra * y;
    const Mat2 k2y = z + 0.5 * h * k1z, k2z = -Rb * (y + 0.5 * h * k1y);
    const Mat2 k3y = z + 0.5 * h * k2z, k3z = -Rb * (y + 0.5 * h * k2y);
    const Mat2 k4y = z + h * k3z, k4z = -Rc * (y + h * k3y);
    Y[i + 1] = y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    Z[i + 1] = z + (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  }
}

JacobiState integrate_jacobi(const ModelSpace& m, const Point& x, const Mat2& initial_hessian,
                             const TangentVector& v, int n_steps) {
  require(n_steps >= 64, ErrorKind::InvalidArgument, "integrate_jacobi: n_steps must be >= 64");
  require((initial_hessian - initial_hessian.transpose()).norm() <= 1e-12 * std::max(1.0, initial_hessian.norm()),
          ErrorKind::InvalidArgument, "integrate_jacobi: initial Hessian must be symmetric");
  JacobiState s;
  s.base = x;
  s.direction = v;
  s.speed = m.norm(v.components);
  require(s.speed < m.cut_radius(), ErrorKind::CutLocus, "integrate_jacobi: |v| beyond the cut radius");
  s.curvature = m.curvature();

  const auto b = m.tangent_frame(x);
  Vec2 c(1.0, 0.0);
  if (s.speed > 0.0) {
    const Vec3 d = v.components / s.speed;
    c = Vec2(m.inner(d, b[0]), m.inner(d, b[1]));
    c.normalize();
  }
  s.frame = {c[0] * b[0] + c[1] * b[1], -c[1] * b[0] + c[0] * b[1]};
  Mat2 Q;
  Q << c[0], -c[1], c[1], c[0];
  const Mat2 H = Q.transpose() * initial_hessian * Q;

  const Mat2 R = curvature_matrix(m, s.speed);
  integrate_matrix_ode([&](double) { return R; }, Mat2::Identity(), H, n_steps, s.J, s.Jdot);

  s.times.resize(n_steps + 1);
  s.weight_ratio.resize(n_steps + 1);
  const double v0 = m.potential(x);
  const Mat2 W0 = s.J[0].transpose() * s.Jdot[0] - s.Jdot[0].transpose() * s.J[0];
  for (int i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) / n_steps;
    s.times[i] = t;
    s.weight_ratio[i] = m.has_weight() ? std::exp(v0 - m.potential(geodesic_position(m, s, t))) : 1.0;
    const Mat2 W = s.J[i].transpose() * s.Jdot[i] - s.Jdot[i].transpose() * s.J[i];
    s.wronskian_drift = std::max(s.wronskian_drift, (W - W0).norm());
  }
  return s;
}

std::vector<double> dn_functional(const JacobiState& s, double N) {
  require(N >= 2.0, ErrorKind::InvalidArgument, "dn_functional: N >= 2");
  std::vector<double> out(s.times.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = s.det(i);
    if (!(d > 0.0)) {
      std::ostringstream os;
      os << "nonpositive Jacobi determinant at t = " << s.times[i];
      throw Error(ErrorKind::NonPositiveDeterminant, os.str());
    }
    const double jnu = s.weight_ratio[i] * d;
    out[i] = std::isfinite(N) ? std::pow(jnu, 1.0 / N) : std::log(jnu);
  }
  return out;
}

Reports verify_comparison(const JacobiState& s, const ModelSpace& m, double N, double K) {
  const std::vector<double> D = dn_functional(s, N);
  const std::size_t n = D.size() - 1;
  require(n >= 8, ErrorKind::Resolution, "verify_comparison: too few samples");
  const double dt = 1.0 / n;
  const bool finite = std::isfinite(N);

  double scale = 1.0;
  std::vector<double> ric(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    ric[i] = bakry_emery_ricci(m, N, geodesic_position(m, s, s.times[i]), geodesic_velocity(m, s, s.times[i]));
    scale = std::max({scale, std::abs(D[i]), std::abs(finite ? ric[i] * D[i] / N : ric[i])});
  }

  double worst = -kInf, worst_uniform = -kInf, noise = 0.0;
  const double r = 0.5 * s.speed;
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    const double d2h = (D[i + 1] - 2.0 * D[i] + D[i - 1]) / (dt * dt);
    const double d22h = (D[i + 2] - 2.0 * D[i] + D[i - 2]) / (4.0 * dt * dt);
    noise = std::max(noise, std::abs(d2h - d22h));
    const double d2 = (4.0 * d2h - d22h) / 3.0;  // Richardson combination, O(dt^4)
    const double bound = finite ? -ric[i] * D[i] / N : -ric[i];
    worst = std::max(worst, d2 - bound);
    const double ubound = finite ? 4.0 * (K / N) * r * r * D[i] : 4.0 * K * r * r;
    worst_uniform = std::max(worst_uniform, d2 - ubound);
  }
  if (noise > 1e-3 * scale) {
    std::ostringstream os;
    os << "verify_comparison: second differences are sampling dominated (h vs 2h gap " << noise << ")";
    throw Error(ErrorKind::Resolution, os.str());
  }

  Reports out;
  auto a = inequality("Jacobi determinant comparison", "det estimate2", worst, 0.0, 0.0, 1e-5 * scale);
  a.diagnostics["scale"] = scale;
  a.diagnostics["h_vs_2h_gap"] = noise;
  a.diagnostics["wronskian_drift"] = s.wronskian_drift;
  out.push_back(a);
  auto b = inequality("Jacobi determinant K-uniform bound", "Ricci ode", worst_uniform, 0.0, 0.0, 1e-5 * scale);
  b.diagnostics["scale"] = scale;
  out.push_back(b);
  return out;
}

Reports verify_ode_structure(const std::function<Mat2(double)>& R, int n_steps, CounterRng rng, int n_random) {
  const char* anchor = "positivity of S(t)";
  std::vector<Mat2> J10, J10d, J01, J01d;
  integrate_matrix_ode(R, Mat2::Identity(), Mat2::Zero(), n_steps, J10, J10d);
  integrate_matrix_ode(R, Mat2::Zero(), Mat2::Identity(), n_steps, J01, J01d);

  std::vector<Mat2> S(n_steps + 1, Mat2::Zero());
  for (int i = 1; i <= n_steps; ++i) {
    const double d = J01[i].determinant();
    if (!(std::abs(d) > 1e-14)) {
      std::ostringstream os;
      os << "J01 singular at t = " << static_cast<double>(i) / n_steps << " (conjugate point)";
      return Reports{rejected("S(t) structure", anchor, os.str())};
    }
    S[i] = J01[i].inverse() * J10[i];
  }

  double asym = 0.0, increase = -kInf;
  for (int i = 1; i <= n_steps; ++i) {
    asym = std::max(asym, (S[i] - S[i].transpose()).norm() / std::max(1.0, S[i].norm()));
    if (i < n_steps) increase = std::max(increase, max_eig(S[i + 1] - S[i]) / std::max(1.0, S[i].norm()));
  }

  Reports out;
  out.push_back(inequality("S(t) symmetric", anchor, asym, 1e-8));
  out.push_back(inequality("S(t) decreasing", anchor, increase, 0.0, 0.0, 1e-12));

  int mismatches = 0, tested = 0, skipped = 0;
  for (int k = 0; k < n_random; ++k) {
    Mat2 A;
    A(0, 0) = 2.0 * rng.normal();
    A(1, 1) = 2.0 * rng.normal();
    A(0, 1) = A(1, 0) = 2.0 * rng.normal();
    const double lam = min_eig(A + S[n_steps]);
    if (std::abs(lam) < 1e-2) {
      ++skipped;
      continue;
    }
    bool positive = true;
    for (int i = 0; i < n_steps; ++i) {
      if (!((J10[i] + J01[i] * A).determinant() > 0.0)) {
        positive = false;
        break;
      }
    }
    ++tested;
    if (positive != (lam >= 0.0)) ++mismatches;
  }
  auto eq = identity("good initial condition equivalence", "good initial condition", mismatches, 0.0);
  eq.diagnostics["tested"] = tested;
  eq.diagnostics["skipped_near_boundary"] = skipped;
  out.push_back(eq);
  return out;
}

}  // namespace abplab
