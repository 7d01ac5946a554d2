#include "abplab/barrier.hpp"

#include "abplab/scalar_field.hpp"

#include <algorithm>
#include <cmath>

namespace abplab {

BarrierSpec make_barrier(const ModelSpace& m, const Point& center, double r, double alpha) {
  require(alpha >= 2.0, ErrorKind::InvalidArgument, "barrier: alpha must be >= 2");
  require(r > 0.0 && r < m.cut_radius(), ErrorKind::CutLocus, "barrier: radius must be inside the cut radius");
  BarrierSpec s;
  s.alpha = alpha;
  const double p = std::pow(18.0, alpha);
  s.beta0 = -alpha * (5.0 + alpha) * p / 6.0;
  s.beta1 = 18.0 * 18.0 / 2.0 * alpha * (3.0 + alpha) * p;
  s.beta2 = -18.0 * 18.0 * 18.0 / 3.0 * alpha * (2.0 + alpha) * p;
  s.model = m;
  s.center = center;
  s.r = r;
  return s;
}

BarrierSpec make_barrier(const ModelSpace& m, const Point& center, double r, const CurvatureParams& params) {
  validate(params);
  require(std::isfinite(params.N), ErrorKind::InvalidArgument, "barrier: N must be finite");
  return make_barrier(m, center, r, params.N * calH(omega_KN(params.K, params.N) * params.R));
}

double barrier_h(const BarrierSpec& s, double t) {
  if (t <= s.junction) return s.beta0 + s.beta1 * t * t + s.beta2 * t * t * t;
  return std::pow(18.0, s.alpha) - std::pow(t, -s.alpha);
}

double barrier_dh(const BarrierSpec& s, double t) {
  if (t <= s.junction) return 2.0 * s.beta1 * t + 3.0 * s.beta2 * t * t;
  return s.alpha * std::pow(t, -s.alpha - 1.0);
}

double barrier_d2h(const BarrierSpec& s, double t) {
  if (t <= s.junction) return 2.0 * s.beta1 + 6.0 * s.beta2 * t;
  return -s.alpha * (s.alpha + 1.0) * std::pow(t, -s.alpha - 2.0);
}

JunctionResidual junction_residual(const BarrierSpec& s) {
  const double t = s.junction;
  const double a = s.alpha;
  JunctionResidual out;
  out.value = std::abs(s.beta0 + s.beta1 * t * t + s.beta2 * t * t * t - (std::pow(18.0, a) - std::pow(t, -a)));
  out.first = std::abs(2.0 * s.beta1 * t + 3.0 * s.beta2 * t * t - a * std::pow(t, -a - 1.0));
  out.second = std::abs(2.0 * s.beta1 + 6.0 * s.beta2 * t + a * (a + 1.0) * std::pow(t, -a - 2.0));
  out.value_scale = std::max({std::abs(s.beta0), std::abs(s.beta1 * t * t), std::abs(s.beta2 * t * t * t),
                              std::pow(18.0, a), std::pow(t, -a)});
  out.first_scale = std::max({std::abs(2.0 * s.beta1 * t), std::abs(3.0 * s.beta2 * t * t), a * std::pow(t, -a - 1.0)});
  out.second_scale =
      std::max({std::abs(2.0 * s.beta1), std::abs(6.0 * s.beta2 * t), a * (a + 1.0) * std::pow(t, -a - 2.0)});
  return out;
}

double barrier_psi(const BarrierSpec& s, const Point& p) {
  const double rho = distance(s.model, s.center, p);
  require(rho < s.model.cut_radius(), ErrorKind::CutLocus, "barrier_psi: point beyond the cut radius");
  return barrier_h(s, rho / s.r);
}

double barrier_laplacian(const BarrierSpec& s, const Point& p) {
  const double t = distance(s.model, s.center, p) / s.r;
  return radial_laplacian_nu(s.model, s.center, p, barrier_dh(s, t) / s.r, barrier_d2h(s, t) / (s.r * s.r));
}

namespace {

constexpr int kRays = 8;
constexpr int kSamples = 2000;

// Point at distance t * r on ray j.
Point ray_point(const BarrierSpec& s, int j, double t) {
  const auto b = s.model.tangent_frame(s.center);
  const double th = 2.0 * kPi * j / kRays;
  return geodesic_point(s.model, s.center, std::cos(th) * b[0] + std::sin(th) * b[1], t * s.r);
}

}  // namespace

Reports verify_barrier(const BarrierSpec& s, const CurvatureParams& params) {
  validate(params);
  require(std::isfinite(params.N), ErrorKind::InvalidArgument, "verify_barrier: N must be finite");
  const char* anchor1 = "barrier 1";
  const char* anchor2 = "barrier 2";
  const ModelSpace& m = s.model;
  const double a = s.alpha;
  const double p18 = std::pow(18.0, a);

  if (ricci_lower_bound(m, params.N, s.center, s.r) < -params.K - 1e-12) {
    const std::string why = "hypothesis violation: Ric_{N,nu} >= -K g on B_r";
    return Reports{rejected("barrier Laplacian inside B_{r/18}", anchor2, why),
                   rejected("barrier Laplacian outside B_{r/18}", anchor2, why)};
  }

  // Profile checks on [0, 2].
  double inf_h = kInf, max_ratio = 0.0, min_ratio = kInf, max_dev = 0.0, tail_resid = 0.0;
  for (int i = 0; i <= 4 * kSamples; ++i) {
    const double t = 2.0 * i / (4.0 * kSamples);
    inf_h = std::min(inf_h, barrier_h(s, t));
    if (t == 0.0) continue;
    const double h1 = barrier_dh(s, t), h2 = barrier_d2h(s, t);
    if (t <= s.junction) {
      max_ratio = std::max(max_ratio, h1 / t);
      min_ratio = std::min(min_ratio, h1 / t);
      max_dev = std::max(max_dev, std::abs(h2 - h1 / t));
    } else {
      const double exact = -a * (a + 2.0) * std::pow(t, -a - 2.0);
      tail_resid = std::max(tail_resid, std::abs(h2 - h1 / t - exact) / std::abs(exact));
    }
  }
  const double bound = 972.0 * a * a * p18;
  Reports out;
  auto r_inf = inequality("barrier infimum", anchor1, -inf_h, a * a * p18);
  r_inf.diagnostics["inf_h"] = inf_h;
  out.push_back(r_inf);
  auto r_der = inequality("barrier derivative bounds", anchor1, std::max(max_ratio, max_dev), bound);
  r_der.diagnostics["max_h1_over_t"] = max_ratio;
  r_der.diagnostics["min_h1_over_t"] = min_ratio;
  r_der.diagnostics["max_h2_minus_h1_over_t"] = max_dev;
  out.push_back(r_der);
  out.push_back(inequality("barrier h'/t positive", anchor1, -min_ratio, 0.0));
  out.back().diagnostics["min_h1_over_t"] = min_ratio;
  out.push_back(inequality("barrier tail identity", anchor1, tail_resid, 1e-12));

  // Laplacian checks.
  const double N = params.N;
  const double H = calH(omega_KN(params.K, N) * s.r);
  double in_max = -kInf, out_max = -kInf, scale = 0.0;
  for (int j = 0; j < kRays; ++j) {
    for (int i = 0; i <= kSamples; ++i) {
      const double t_in = s.junction * i / kSamples;
      const double v_in = s.r * s.r * barrier_laplacian(s, ray_point(s, j, t_in)) / N + H;
      in_max = std::max(in_max, v_in);
      if (i == 0) continue;
      const double t_out = s.junction + (1.0 - s.junction) * (i - 0.5) / kSamples;
      const double v_out = s.r * s.r * barrier_laplacian(s, ray_point(s, j, t_out)) / N + H;
      out_max = std::max(out_max, v_out);
      scale = std::max({scale, std::abs(v_in), std::abs(v_out)});
    }
  }
  auto r_in = inequality("barrier Laplacian inside B_{r/18}", anchor2, in_max, 972.0 * a * a * a * std::pow(4.0, a),
                         1e-12);
  const double proof_bound = 972.0 / N * a * a * std::pow(9.0, a) + (bound + 1.0) * H;
  r_in.diagnostics["proof_form_bound"] = proof_bound;
  r_in.diagnostics["alpha"] = a;
  out.push_back(r_in);
  auto r_proof = inequality("barrier Laplacian inside B_{r/18} (proof form)", anchor2, in_max, proof_bound, 1e-12);
  r_proof.diagnostics["alpha"] = a;
  out.push_back(r_proof);
  auto r_out = inequality("barrier Laplacian outside B_{r/18}", anchor2, out_max, 0.0, 0.0, 1e-12 * scale);
  r_out.diagnostics["scale"] = scale;
  out.push_back(r_out);
  return out;
}

Reports check_ricci_comparison(const ModelSpace& m, const CurvatureParams& params, const Point& y,
                               double sample_radius) {
  validate(params);
  const char* anchor = "Ricci comparison";
  const double N = params.N, K = params.K;
  require(std::isfinite(N) && N > 1.0, ErrorKind::InvalidArgument, "Ricci comparison: N must be finite and > 1");
  require(sample_radius > 0.0 && sample_radius < m.cut_radius(), ErrorKind::CutLocus,
          "Ricci comparison: sample radius must be inside the cut radius");
  if (ricci_lower_bound(m, N, y, sample_radius) < -K - 1e-12) {
    return Reports{rejected("Ricci comparison", anchor, "hypothesis violation: Ric_{N,nu} >= -K g")};
  }
  const double w1 = omega_KN(K, N - 1.0), w = omega_KN(K, N);
  const auto b = m.tangent_frame(y);
  double worst_rho = -kInf, worst_half = -kInf, worst_scalar = -kInf;
  constexpr int rays = 16, samples = 400;
  for (int j = 0; j < rays; ++j) {
    const double th = 2.0 * kPi * j / rays;
    const Vec3 dir = std::cos(th) * b[0] + std::sin(th) * b[1];
    for (int i = 1; i <= samples; ++i) {
      const double rho = sample_radius * i / samples;
      const Point p = geodesic_point(m, y, dir, rho);
      double lap_rho = m.polar_psi_log_derivative(rho);
      if (m.has_weight()) lap_rho -= m.potential_gradient(p).dot(distance_gradient(m, y, p));
      worst_rho = std::max(worst_rho, lap_rho - (N - 1.0) * calH(w1 * rho) / rho);
      worst_half = std::max(worst_half, weighted_laplacian_half_dist2(m, y, p) - N * calH(w * rho));
      if (j == 0) worst_scalar = std::max(worst_scalar, 1.0 + (N - 1.0) * calH(w1 * rho) - N * calH(w * rho));
    }
  }
  Reports out;
  out.push_back(inequality("Ricci comparison", anchor, worst_rho, 0.0, 0.0, 1e-12));
  out.push_back(inequality("Ricci comparison for rho^2/2", anchor, worst_half, 0.0, 0.0, 1e-12));
  out.push_back(inequality("Ricci comparison constant inequality", anchor, worst_scalar, 0.0, 0.0, 1e-12));
  for (auto& r : out) {
    r.diagnostics["K"] = K;
    r.diagnostics["N"] = N;
    r.diagnostics["sample_radius"] = sample_radius;
  }
  return out;
}

}  // namespace abplab
