#include "abplab/measure_tools.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace abplab {

Reports doubling_check(const ModelSpace& m, const CurvatureParams& params, const Point& center, double r1,
                       double r2) {
  validate(params);
  const char* anchor = "doubling finite";
  const double K = params.K, N = params.N, R = params.R;
  require(std::isfinite(N) && N > 1.0, ErrorKind::InvalidArgument, "doubling_check: N must be finite and > 1");
  require(0.0 < r2 && r2 < r1 && r1 <= R * (1.0 + 1e-12), ErrorKind::InvalidArgument,
          "doubling_check: need 0 < r2 < r1 <= R");
  require(R < m.cut_radius(), ErrorKind::CutLocus, "doubling_check: R beyond the cut radius");
  if (ricci_lower_bound(m, N, center, R) < -K - 1e-12)
    return Reports{rejected("doubling estimate", anchor, "hypothesis violation: Ric_{N,nu} >= -K g on B_R")};

  const double logD = log_doubling_const(K, N, R);
  const double D = std::exp(logD);
  const double eta = logD / std::log(2.0) / N;
  const double cosh_bound =
      K > 0.0 ? std::pow(2.0, N) * std::pow(std::cosh(2.0 * std::sqrt(K / (N - 1.0)) * R), N - 1.0)
              : std::pow(2.0, N);

  const double ratio = ball_measure(m, center, r1).value / ball_measure(m, center, r2).value;
  Reports out;
  auto est = inequality("doubling estimate", "doubling estimate", ratio, D * std::pow(r1 / r2, N * eta), 1e-10);
  est.diagnostics["r1"] = r1;
  est.diagnostics["r2"] = r2;
  est.diagnostics["eta"] = eta;
  out.push_back(est);

  double worst = 0.0, worst_s = 0.0;
  for (int i = 1; i <= 8; ++i) {
    const double s = 0.5 * R * i / 8.0;
    const double q = ball_measure(m, center, 2.0 * s).value / ball_measure(m, center, s).value;
    if (q > worst) {
      worst = q;
      worst_s = s;
    }
  }
  auto dbl = inequality("doubling ratio", anchor, worst, cosh_bound, 1e-10);
  dbl.diagnostics["worst_s"] = worst_s;
  out.push_back(dbl);
  out.push_back(inequality("doubling cosh bound below D", anchor, cosh_bound, D, 1e-12));
  for (auto& r : out) {
    r.diagnostics["K"] = K;
    r.diagnostics["N"] = N;
    r.diagnostics["R"] = R;
  }
  return out;
}

double integral_I(const ScalarField& f, double N, double q, double r_sub) {
  require(q > 0.0, ErrorKind::InvalidArgument, "integral_I: q must be > 0");
  require(std::isfinite(N) && N > 0.0, ErrorKind::InvalidArgument, "integral_I: N must be finite");
  const auto& g = f.grid();
  const double r = r_sub > 0.0 ? std::min(r_sub, g.radius()) : g.radius();
  const double e = N * q;
  std::vector<double> v(g.size());
  double top = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) top = std::max(top, std::abs(f.value(k)));
  if (top == 0.0) return 0.0;
  // Factor out the maximum so large exponents stay finite.
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = std::pow(std::abs(f.value(k)) / top, e);
  return r * r * top * std::pow(g.average(v, r), 1.0 / e);
}

Reports lp_distribution_check(const std::vector<double>& f, const std::vector<double>& weights, double C, double p) {
  const char* anchor = "Lp";
  require(!f.empty() && f.size() == weights.size(), ErrorKind::InvalidArgument,
          "lp_distribution_check: values and weights must match");
  require(C > 1.0 && p > 0.0, ErrorKind::InvalidArgument, "lp_distribution_check: need C > 1, p > 0");
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  double total = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    require(f[k] >= 0.0 && weights[k] >= 0.0, ErrorKind::InvalidArgument,
            "lp_distribution_check: values and weights must be >= 0");
    total += weights[k];
    mean += weights[k] * std::pow(f[k], p);
  }
  require(total > 0.0, ErrorKind::InvalidArgument, "lp_distribution_check: zero total weight");
  mean /= total;
  // tail[i] = weight of the values order[i..]
  std::vector<double> tail(f.size() + 1, 0.0);
  for (std::size_t i = f.size(); i-- > 0;) tail[i] = tail[i + 1] + weights[order[i]];
  auto upper = [&](double t) {
    const auto it = std::upper_bound(order.begin(), order.end(), t, [&](double v, std::size_t k) { return v < f[k]; });
    return tail[static_cast<std::size_t>(it - order.begin())] / total;
  };

  double S = 0.0;
  int k = 0;
  for (; k < 10000; ++k) {
    const double lam = upper(std::pow(C, k));
    const double term = std::exp(p * k * std::log(C)) * lam;
    S += term;
    if (lam == 0.0 || (k > 0 && term < 1e-15 * S)) break;
  }
  if (k >= 10000) return Reports{rejected("Lp distribution bracketing", anchor, "distribution sum S did not converge")};
  const double cp = std::pow(C, p);
  const double lower = (1.0 - 1.0 / cp) * S + upper(1.0) / cp;
  const double up = 1.0 + (cp - 1.0) * S;
  Reports out;
  out.push_back(inequality("Lp lower bracket", anchor, lower, mean, 1e-12));
  out.push_back(inequality("Lp upper bracket", anchor, mean, up, 1e-12));
  for (auto& r : out) {
    r.diagnostics["S"] = S;
    r.diagnostics["truncation_index"] = k;
    r.diagnostics["C"] = C;
    r.diagnostics["p"] = p;
    r.notes["distribution"] = "upper tail nu[{f > t}]";
  }
  return out;
}

std::vector<std::size_t> vitali_cover(const BallFamily& fam) {
  require(!fam.balls.empty(), ErrorKind::InvalidArgument, "vitali_cover: empty family");
  std::vector<std::size_t> order(fam.balls.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fam.balls[a].radius > fam.balls[b].radius; });
  std::vector<std::size_t> sel;
  for (std::size_t i : order) {
    const Ball& b = fam.balls[i];
    require(b.radius > 0.0, ErrorKind::InvalidArgument, "vitali_cover: radii must be > 0");
    bool free = true;
    for (std::size_t s : sel) {
      if (distance(fam.model, b.center, fam.balls[s].center) < 0.25 * (b.radius + fam.balls[s].radius)) {
        free = false;
        break;
      }
    }
    if (free) sel.push_back(i);
  }
  return sel;
}

Reports verify_vitali(const BallFamily& fam, const std::vector<std::size_t>& selected) {
  const char* anchor = "Vitali";
  const ModelSpace& m = fam.model;
  std::vector<char> is_sel(fam.balls.size(), 0);
  for (std::size_t s : selected) is_sel[s] = 1;

  // Largest overlap of two selected quarter balls (<= 0 means disjoint).
  double overlap = -kInf;
  for (std::size_t a = 0; a < selected.size(); ++a)
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      const Ball& p = fam.balls[selected[a]];
      const Ball& q = fam.balls[selected[b]];
      overlap = std::max(overlap, 0.25 * (p.radius + q.radius) - distance(m, p.center, q.center));
    }
  if (selected.size() < 2) overlap = 0.0;

  std::size_t uncovered = 0, no_witness = 0;
  for (std::size_t i = 0; i < fam.balls.size(); ++i) {
    const Ball& b = fam.balls[i];
    bool covered = false, witness = is_sel[i] != 0;
    for (std::size_t s : selected) {
      const Ball& t = fam.balls[s];
      const double d = distance(m, b.center, t.center);
      if (d < t.radius) covered = true;
      if (!witness && t.radius >= b.radius && d < 0.25 * (b.radius + t.radius)) witness = true;
    }
    uncovered += !covered;
    no_witness += !witness;
  }
  Reports out;
  auto dis = inequality("Vitali quarter balls disjoint", anchor, overlap, 0.0);
  dis.diagnostics["selected"] = static_cast<double>(selected.size());
  out.push_back(dis);
  out.push_back(identity("Vitali centres covered", anchor, static_cast<double>(uncovered), 0.0));
  out.push_back(identity("Vitali larger intersecting witness", anchor, static_cast<double>(no_witness), 0.0));
  return out;
}

}  // namespace abplab
