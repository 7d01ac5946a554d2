#include "abplab/pucci.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace abplab {

namespace {

Vec2 eigenvalues(const Mat2& H) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Mat2 random_symmetric(CounterRng& rng, double scale) {
  Mat2 A;
  A(0, 0) = scale * rng.normal();
  A(1, 1) = scale * rng.normal();
  A(0, 1) = A(1, 0) = scale * rng.normal();
  return A;
}

Mat2 random_psd(CounterRng& rng, double scale) {
  Mat2 B;
  B << rng.normal(), rng.normal(), rng.normal(), rng.normal();
  return scale * B * B.transpose();
}

Mat2 rotation(double t) {
  Mat2 Q;
  Q << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return Q;
}

}  // namespace

PucciValues pucci(const Mat2& H, double theta) {
  require(theta >= 1.0, ErrorKind::InvalidArgument, "pucci: theta must be >= 1");
  const double asym = std::abs(H(0, 1) - H(1, 0));
  require(asym <= 1e-12 * std::max(1.0, H.norm()), ErrorKind::InvalidArgument, "pucci: matrix is not symmetric");
  const Mat2 S = 0.5 * (H + H.transpose());
  const Vec2 l = eigenvalues(S);
  PucciValues out;
  for (int i = 0; i < 2; ++i) {
    if (l[i] >= 0.0) {
      out.m_minus += l[i];
      out.m_plus += theta * l[i];
    } else {
      out.m_minus += theta * l[i];
      out.m_plus += l[i];
    }
  }
  return out;
}

double e_theta(const ModelSpace& m, double r, double theta) {
  require(theta >= 1.0, ErrorKind::InvalidArgument, "e_theta: theta must be >= 1");
  require(r > 0.0 && r < m.cut_radius(), ErrorKind::CutLocus, "e_theta: r must be inside the cut radius");
  // Eigenvalues of Hess(rho^2/2) are 1 and tau(rho); M+ - tr = (theta - 1) * (sum of the nonnegative ones).
  // tau is monotone in rho on every model, so the supremum sits at an end point.
  double best = 0.0;
  for (double rho : {0.0, r}) best = std::max(best, 1.0 + std::max(0.0, m.distance_hessian_transverse(rho)));
  return (theta - 1.0) * best;
}

Reports e_theta_bounds(const ModelSpace& m, double R, double theta) {
  const char* anchor = "error estimate";
  const int n = m.dim();
  const double E = e_theta(m, 2.0 * R, theta);
  // Model lower bounds: Ric >= (n - 1) c g and sectional >= c.
  const double c = m.curvature();
  const double K_ric = std::max(0.0, -(n - 1) * c);
  const double K_sec = std::max(0.0, -c);
  Reports out;
  if (m.kind() == ModelKind::Sphere && 2.0 * R * std::sqrt(m.k()) >= kPi / 2.0) {
    out.push_back(rejected("E_theta bound i)", anchor, "hypothesis violation: Hess(rho^2/2) >= 0 on B_R"));
  } else {
    auto a = inequality("E_theta bound i)", anchor, E, (theta - 1.0) * (1.0 + (n - 1) * calH(omega_KN(K_ric, n) * R)),
                        1e-12);
    a.diagnostics["K"] = K_ric;
    out.push_back(a);
  }
  auto b = inequality("E_theta bound ii)", anchor, E,
                      (theta - 1.0) * (1.0 + (n - 1) * calH(std::sqrt(K_sec / n) * R)), 1e-12);
  b.diagnostics["K_s"] = K_sec;
  out.push_back(b);
  for (auto& r : out) {
    r.diagnostics["R"] = R;
    r.diagnostics["theta"] = theta;
    r.diagnostics["E_theta_2R"] = E;
  }
  return out;
}

CheckReport pucci_contact_bound(const Mat2& Hu, const Mat2& Hd, double a, double theta) {
  const char* anchor = "fully nonlinear";
  require(a > 0.0, ErrorKind::InvalidArgument, "pucci_contact_bound: a must be > 0");
  const Mat2 S = Hu + a * Hd;
  const double scale = std::max(1.0, Hu.norm() + a * Hd.norm());
  if (eigenvalues(0.5 * (S + S.transpose()))[0] < -1e-12 * scale)
    return rejected("Pucci contact bound", anchor, "hypothesis violation: Hess u + a Hess(rho^2/2) >= 0");
  const double rhs = pucci(Hu, theta).m_minus + a * (pucci(Hd, theta).m_plus - Hd.trace());
  auto rep = inequality("Pucci contact bound", anchor, Hu.trace(), rhs, 0.0, 1e-12 * scale);
  rep.diagnostics["theta"] = theta;
  return rep;
}

Reports pucci_algebra_check(CounterRng rng, int samples, double theta) {
  const char* anchor = "Pucci extremal operator";
  double dual = 0.0, collapse = 0.0, order = -kInf, mono = -kInf, sub = -kInf, sup = -kInf;
  for (int s = 0; s < samples; ++s) {
    const Mat2 A = random_symmetric(rng, 2.0), B = random_symmetric(rng, 2.0);
    const Mat2 P = random_psd(rng, 1.0);
    const double scale = 1.0 + A.norm() + B.norm() + P.norm();
    const PucciValues pa = pucci(A, theta), pb = pucci(B, theta), pab = pucci(A + B, theta);
    const PucciValues pn = pucci(-A, theta), pp = pucci(A + P, theta), p1 = pucci(A, 1.0);
    dual = std::max(dual, std::abs(pa.m_minus + pn.m_plus) / scale);
    collapse = std::max({collapse, std::abs(p1.m_minus - A.trace()) / scale, std::abs(p1.m_plus - A.trace()) / scale});
    order = std::max({order, (pa.m_minus - A.trace()) / scale, (A.trace() - pa.m_plus) / scale});
    mono = std::max({mono, (pa.m_minus - pp.m_minus) / scale, (pa.m_plus - pp.m_plus) / scale});
    sub = std::max(sub, (pab.m_plus - pa.m_plus - pb.m_plus) / scale);
    sup = std::max(sup, (pa.m_minus + pb.m_minus - pab.m_minus) / scale);
  }
  Reports out;
  out.push_back(inequality("Pucci duality M-(H) = -M+(-H)", anchor, dual, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci theta = 1 collapse", anchor, collapse, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci M- <= tr <= M+", anchor, order, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci monotone", anchor, mono, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci M+ subadditive", anchor, sub, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci M- superadditive", anchor, sup, 0.0, 0.0, 1e-14));
  for (auto& r : out) {
    r.diagnostics["samples"] = samples;
    r.diagnostics["theta"] = theta;
  }
  return out;
}

Reports pucci_extremal_check(CounterRng rng, int n_h, int n_a, double theta) {
  const char* anchor = "bundle of g-self-adjoint operators";
  double outside = -kInf, attain = 0.0;
  for (int s = 0; s < n_h; ++s) {
    const Mat2 H = random_symmetric(rng, 2.0);
    const PucciValues pv = pucci(H, theta);
    const double scale = 1.0 + H.norm();
    for (int t = 0; t < n_a; ++t) {
      const Mat2 Q = rotation(rng.uniform(0.0, 2.0 * kPi));
      const Vec2 d(rng.uniform(1.0, theta), rng.uniform(1.0, theta));
      const Mat2 A = Q * d.asDiagonal() * Q.transpose();
      const double v = (A * H).trace();
      outside = std::max({outside, (pv.m_minus - v) / scale, (v - pv.m_plus) / scale});
    }
    Eigen::SelfAdjointEigenSolver<Mat2> es(H);
    const Mat2& V = es.eigenvectors();
    const Vec2& l = es.eigenvalues();
    Vec2 dmin, dmax;
    for (int i = 0; i < 2; ++i) {
      dmin[i] = l[i] >= 0.0 ? 1.0 : theta;
      dmax[i] = l[i] >= 0.0 ? theta : 1.0;
    }
    const double vmin = (V * dmin.asDiagonal() * V.transpose() * H).trace();
    const double vmax = (V * dmax.asDiagonal() * V.transpose() * H).trace();
    attain = std::max({attain, std::abs(vmin - pv.m_minus), std::abs(vmax - pv.m_plus)});
  }
  Reports out;
  out.push_back(inequality("Pucci inf/sup bracket", anchor, outside, 0.0, 0.0, 1e-14));
  out.push_back(inequality("Pucci extremal attained", anchor, attain, 1e-9));
  return out;
}

Reports pucci_contact_suite(CounterRng rng, int samples, double theta) {
  double worst = -kInf;
  int fails = 0;
  for (int s = 0; s < samples; ++s) {
    const double a = rng.uniform(0.1, 3.0);
    const Mat2 Hd = random_symmetric(rng, 1.0);
    // Hu = P - a Hd with P >= 0 enforces the contact condition.
    const Mat2 Hu = random_psd(rng, 1.0) - a * Hd;
    const CheckReport r = pucci_contact_bound(Hu, Hd, a, theta);
    if (!r.pass) ++fails;
    worst = std::max(worst, (r.lhs - r.rhs) / r.tolerance());
  }
  auto rep = identity("Pucci contact bound (random pairs)", "fully nonlinear", fails, 0.0);
  rep.diagnostics["samples"] = samples;
  rep.diagnostics["worst_excess_over_tol"] = worst;
  rep.diagnostics["theta"] = theta;
  return Reports{rep};
}

CurvatureParams pucci_params(const CurvatureParams& params, double e) {
  validate(params);
  require(e >= 0.0, ErrorKind::InvalidArgument, "pucci_params: E_theta must be >= 0");
  CurvatureParams out = params;
  const double s = std::sqrt(params.K) * params.R + e;
  out.K = s * s / (params.R * params.R);
  return out;
}

}  // namespace abplab
