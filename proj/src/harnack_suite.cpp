#include "abplab/harnack_suite.hpp"

#include "abplab/abp_estimate.hpp"
#include "abplab/contact_sets.hpp"
#include "abplab/measure_tools.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

namespace abplab {

PoissonSolution solve_poisson(const DirichletProblem& prob) {
  require(prob.n_r >= 64 && prob.n_theta >= 64, ErrorKind::Resolution, "solve_poisson: grid must be at least 64x64");
  require(static_cast<bool>(prob.f) && static_cast<bool>(prob.g), ErrorKind::InvalidArgument,
          "solve_poisson: f and g are required");
  const ModelSpace& m = prob.model;
  require(prob.radius > 0.0 && prob.radius < m.cut_radius(), ErrorKind::CutLocus,
          "solve_poisson: radius must be inside the cut radius");
  auto grid = std::make_shared<const GeodesicBallGrid>(m, prob.center, prob.radius, prob.n_r, prob.n_theta);
  const DiscreteLaplacian L(grid);
  const auto& g = *grid;
  const std::size_t n = g.size();

  PoissonSolution sol{ScalarField(grid, std::vector<double>(n, 0.0)), std::vector<double>(n), {}, 0.0};
  sol.boundary.resize(g.n_theta());
  for (int j = 0; j < g.n_theta(); ++j) sol.boundary[j] = prob.g(g.point_at(prob.radius, j * g.dtheta()));

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * n);
  Eigen::VectorXd b(n);
  double op_norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const GridNode& nd = g.node(k);
    const auto& row = L.row(k);
    sol.f[k] = prob.f(nd.point);
    b[k] = sol.f[k];
    const bool outer = nd.i == g.n_r() - 1;
    const double c_out = outer ? 2.0 * row.out : row.out;
    const double diag = -(c_out + row.in + row.left + row.right);
    trip.emplace_back(k, k, diag);
    if (outer)
      b[k] -= c_out * sol.boundary[nd.j];
    else
      trip.emplace_back(k, g.index(nd.i + 1, nd.j), row.out);
    if (nd.i > 0) trip.emplace_back(k, g.index(nd.i - 1, nd.j), row.in);
    trip.emplace_back(k, g.index(nd.i, nd.j - 1), row.left);
    trip.emplace_back(k, g.index(nd.i, nd.j + 1), row.right);
    op_norm = std::max(op_norm, 2.0 * std::abs(diag));
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  require(lu.info() == Eigen::Success, ErrorKind::Convergence, "solve_poisson: factorisation failed");
  Eigen::VectorXd x = lu.solve(b);
  // One step of iterative refinement.
  x += lu.solve(b - A * x);

  std::vector<double> u(x.data(), x.data() + n);
  double res = 0.0, fnorm = 0.0, unorm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    res = std::max(res, std::abs(L.apply(u, sol.boundary, k) - sol.f[k]));
    fnorm = std::max(fnorm, std::abs(sol.f[k]));
    unorm = std::max(unorm, std::abs(u[k]));
  }
  const double limit = 1e-10 * fnorm + 1e-12 + 1e-13 * op_norm * unorm;
  if (!(res <= limit)) {
    throw Error(ErrorKind::Convergence,
                "solve_poisson: residual " + std::to_string(res) + " above " + std::to_string(limit));
  }
  sol.u = ScalarField(grid, std::move(u));
  sol.residual = res;
  return sol;
}

// ---------------------------------------------------------------------------

namespace {

const char* kNonSharp = "non-sharp: the constants are far from optimal; a pass certifies the pipeline, not sharpness";

enum class Relation { Super, Sub, Equal };

struct Terms {
  double inf_half = kInf, sup_half = -kInf;
  double f_term = 0.0;  // R^2 (avg_{B_2R} |f|^{N eta})^{1/(N eta)}
};

// Returns the name of the first failing premise, if any.
std::optional<std::string> premises(const HarnackInput& in, const ConstantsLedger& led, Relation rel,
                                    bool need_nonneg) {
  const auto& g = in.u.grid();
  const ModelSpace& m = g.model();
  const double R = led.params.R;
  require(std::abs(g.radius() - 2.0 * R) <= 1e-12 * R, ErrorKind::InvalidArgument,
          "Harnack check: the grid must cover B_{2R}");
  require(in.f.size() == g.size(), ErrorKind::InvalidArgument, "Harnack check: f size mismatch");
  if (ricci_lower_bound(m, led.params.N, g.center(), 2.0 * R) < -led.params.K - 1e-12)
    return "Ric_{N,nu} >= -K g on B_{2R}";
  if (need_nonneg) {
    for (std::size_t k = 0; k < g.size(); ++k)
      if (in.u.value(k) < -1e-12) return "u >= 0 in B_{2R}";
  }
  std::unique_ptr<DiscreteLaplacian> L;
  if (!in.u.has_closed_form()) L = std::make_unique<DiscreteLaplacian>(in.u.grid_ptr());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const GridNode& nd = g.node(k);
    double lap;
    if (L) {
      if (nd.i == g.n_r() - 1 && in.boundary.empty()) continue;
      lap = in.boundary.empty() ? L->apply(in.u.values(), k) : L->apply(in.u.values(), in.boundary, k);
    } else {
      lap = in.u.laplacian_nu(nd.point);
    }
    const double tol = in.tol * std::max(1.0, std::abs(in.f[k]));
    const double d = lap - in.f[k];
    if (rel == Relation::Super && d > tol) return "Delta_nu u <= f in B_{2R}";
    if (rel == Relation::Sub && d < -tol) return "Delta_nu u >= f in B_{2R}";
    if (rel == Relation::Equal && std::abs(d) > tol) return "Delta_nu u = f in B_{2R}";
  }
  return std::nullopt;
}

Terms terms(const HarnackInput& in, const ConstantsLedger& led) {
  const auto& g = in.u.grid();
  const double R = led.params.R;
  Terms t;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.node(k).rho >= 0.5 * R) continue;
    t.inf_half = std::min(t.inf_half, in.u.value(k));
    t.sup_half = std::max(t.sup_half, in.u.value(k));
  }
  require(std::isfinite(t.inf_half), ErrorKind::Resolution, "Harnack check: no nodes in B_{R/2}");
  // integral_I scales by (2R)^2.
  t.f_term = integral_I(ScalarField(in.u.grid_ptr(), in.f), led.params.N, led.eta) / 4.0;
  return t;
}

// log of (avg_{B_rad} (u^+)^p)^{1/p}, stable for tiny p.
double log_power_mean(const ScalarField& u, double p, double rad) {
  const auto& g = u.grid();
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = std::max(0.0, u.value(k));
    v[k] = std::expm1(p * std::log(x));
  }
  return std::log1p(g.average(v, rad)) / p;
}

// lhs <= C * bracket with logs; C may only be known through log log C.
CheckReport log_compare(const std::string& name, const std::string& anchor, double log_lhs, double log_bracket,
                        double log_c, double loglog_c) {
  CheckReport r;
  if (log_lhs == -kInf) {
    r = inequality(name, anchor, 0.0, 0.0);
    r.notes["degenerate"] = "left side vanishes";
  } else if (log_bracket == -kInf) {
    r = inequality(name, anchor, std::exp(log_lhs), 0.0);
    r.notes["degenerate"] = "bracket vanishes";
  } else if (std::isfinite(log_c)) {
    r = inequality(name, anchor, log_lhs - log_bracket, log_c, 1e-12);
    r.scale = "log";
  } else {
    const double d = log_lhs - log_bracket;
    r = inequality(name, anchor, d > 0.0 ? std::log(d) : -700.0, loglog_c, 1e-12);
    r.scale = "loglog";
  }
  r.diagnostics["log_lhs"] = log_lhs;
  r.diagnostics["log_bracket"] = log_bracket;
  r.diagnostics["loglog_C"] = loglog_c;
  r.notes["sharpness"] = kNonSharp;
  return r;
}

void add_terms(CheckReport& r, const Terms& t) {
  r.diagnostics["inf_half"] = t.inf_half;
  r.diagnostics["sup_half"] = t.sup_half;
  r.diagnostics["f_term"] = t.f_term;
}

}  // namespace

CheckReport harnack_check_sup(const HarnackInput& in, const ConstantsLedger& led) {
  const char* name = "Harnack sup inequality";
  const char* anchor = "Harnack sup finite";
  if (auto p = premises(in, led, Relation::Super, true)) {
    auto r = rejected(name, anchor, "hypothesis violation: " + *p);
    r.notes["premise"] = *p;
    return r;
  }
  const Terms t = terms(in, led);
  const double log_lhs = log_power_mean(in.u, led.p0, 0.5 * led.params.R);
  const double bracket = t.inf_half + t.f_term;
  auto r = log_compare(name, anchor, log_lhs, bracket > 0.0 ? std::log(bracket) : -kInf, led.log_c0,
                       std::log(led.log_c0));
  add_terms(r, t);
  r.diagnostics["p0"] = led.p0;
  return r;
}

CheckReport harnack_check_sub(const HarnackInput& in, const ConstantsLedger& led, double p) {
  const char* name = "Harnack sub inequality";
  const char* anchor = "Harnack sub finite";
  require(p > 0.0, ErrorKind::InvalidArgument, "harnack_check_sub: p must be > 0");
  if (p < led.p0) return rejected(name, anchor, "unsupported: C1(p) for p < p0 has no explicit value");
  if (auto q = premises(in, led, Relation::Sub, false)) {
    auto r = rejected(name, anchor, "hypothesis violation: " + *q);
    r.notes["premise"] = *q;
    return r;
  }
  const Terms t = terms(in, led);
  CheckReport r;
  if (t.sup_half <= 0.0) {
    r = inequality(name, anchor, t.sup_half, 0.0);
    r.notes["sharpness"] = kNonSharp;
  } else {
    const double mean = std::exp(log_power_mean(in.u, p, led.params.R));
    const double bracket = mean + t.f_term;
    r = log_compare(name, anchor, std::log(t.sup_half), bracket > 0.0 ? std::log(bracket) : -kInf, led.log_c2,
                    led.loglog_c2);
    r.diagnostics["power_mean"] = mean;
  }
  add_terms(r, t);
  r.diagnostics["p"] = p;
  return r;
}

CheckReport harnack_check_full(const HarnackInput& in, const ConstantsLedger& led) {
  const char* name = "Harnack inequality";
  const char* anchor = "Harnack soln finite";
  if (auto p = premises(in, led, Relation::Equal, true)) {
    auto r = rejected(name, anchor, "hypothesis violation: " + *p);
    r.notes["premise"] = *p;
    return r;
  }
  const Terms t = terms(in, led);
  const double bracket = t.inf_half + t.f_term;
  auto r = log_compare(name, anchor, t.sup_half > 0.0 ? std::log(t.sup_half) : -kInf,
                       bracket > 0.0 ? std::log(bracket) : -kInf, led.log_c2, led.loglog_c2);
  add_terms(r, t);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// h'(t)/t and h'' - h'/t without dividing by t.
double h1_over_t(const BarrierSpec& s, double t) {
  if (t <= s.junction) return 2.0 * s.beta1 + 3.0 * s.beta2 * t;
  return s.alpha * std::pow(t, -s.alpha - 2.0);
}

double h2_minus(const BarrierSpec& s, double t) {
  if (t <= s.junction) return 3.0 * s.beta2 * t;
  return -s.alpha * (s.alpha + 2.0) * std::pow(t, -s.alpha - 2.0);
}

// Pattern search for a local minimum of f near `start`.
Point local_minimum(const ModelSpace& m, const PointFunction& f, Point best, double step, double stop) {
  double fb = f(best);
  while (step > stop) {
    const auto b = m.tangent_frame(best);
    bool moved = false;
    for (int j = 0; j < 16; ++j) {
      const double th = 2.0 * kPi * j / 16.0;
      const Point q = geodesic_point(m, best, std::cos(th) * b[0] + std::sin(th) * b[1], step);
      const double fq = f(q);
      if (fq < fb) {
        fb = fq;
        best = q;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

FieldFunctions barrier_shifted(const FieldFunctions& u, const BarrierSpec& s) {
  require(u.value && u.gradient && u.hessian, ErrorKind::MissingClosedForm,
          "barrier_shifted: u needs value, gradient and Hessian");
  const ModelSpace m = s.model;
  FieldFunctions w;
  w.value = [u, s](const Point& p) { return u.value(p) + barrier_psi(s, p); };
  w.gradient = [u, s, m](const Point& p) {
    Vec3 gr = u.gradient(p);
    const double rho = distance(m, s.center, p);
    if (rho > 0.0) gr += barrier_dh(s, rho / s.r) / s.r * distance_gradient(m, s.center, p);
    return gr;
  };
  w.hessian = [u, s, m](const Point& p, const Vec3& a, const Vec3& b) {
    const double rho = distance(m, s.center, p);
    const double t = rho / s.r;
    double hv = h1_over_t(s, t) * hessian_half_dist2(m, s.center, p, a, b);
    if (rho > 0.0) {
      const Vec3 n = distance_gradient(m, s.center, p);
      hv += h2_minus(s, t) * m.inner(n, a) * m.inner(n, b);
    }
    return u.hessian(p, a, b) + hv / (s.r * s.r);
  };
  return w;
}

Reports growth_check(const GrowthInstance& inst, const ConstantsLedger& led) {
  const char* name = "local growth";
  const char* anchor = "local growth";
  const ModelSpace& m = inst.model;
  const double K = led.params.K, N = led.params.N, R = led.params.R, r = inst.r;
  require(std::isfinite(N), ErrorKind::InvalidArgument, "growth_check: N must be finite");
  require(r > 0.0 && r <= R * (1.0 + 1e-12), ErrorKind::InvalidArgument, "growth_check: need 0 < r <= R");
  require(2.0 * R < m.cut_radius(), ErrorKind::CutLocus, "growth_check: B_{2R} beyond the cut radius");
  require(inst.u.value && inst.u.gradient && inst.u.hessian && inst.f, ErrorKind::MissingClosedForm,
          "growth_check: u (with derivatives) and f are required");
  require(inst.resolution >= 32, ErrorKind::Resolution, "growth_check: resolution must be >= 32");

  auto reject = [&](const std::string& premise) {
    auto rep = rejected(name, anchor, "hypothesis violation: " + premise);
    rep.notes["premise"] = premise;
    rep.notes["sharpness"] = kNonSharp;
    return Reports{rep};
  };

  const int n = inst.resolution;
  auto grid = std::make_shared<const GeodesicBallGrid>(m, inst.x0, r, n, n);
  const ScalarField u = ScalarField::closed_form(grid, inst.u);

  if (ricci_lower_bound(m, N, inst.x0, 2.0 * R) < -K - 1e-12) return reject("Ric_{N,nu} >= -K g on B_{2R}");
  double inf_half = kInf;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const GridNode& nd = grid->node(k);
    if (u.value(k) < -1e-12) return reject("u >= 0 in B_r(x0)");
    if (nd.rho < 0.5 * r) inf_half = std::min(inf_half, u.value(k));
    const double fk = inst.f(nd.point);
    if (u.laplacian_nu(nd.point) > fk + 1e-9 * std::max(1.0, std::abs(fk))) return reject("Delta_nu u <= f in B_r(x0)");
  }
  if (inf_half > 1.0 + 1e-12) return reject("inf_{B_{r/2}} u <= 1");
  {
    auto g2 = std::make_shared<const GeodesicBallGrid>(m, inst.x0, 2.0 * R, n, n);
    std::vector<double> fv(g2->size());
    for (std::size_t k = 0; k < g2->size(); ++k) fv[k] = inst.f(g2->node(k).point);
    if (integral_I(ScalarField(g2, fv), N, 1.0) > led.delta0) return reject("I_{K,N}(f, B_{2R}, 1) <= delta0");
  }

  Reports out;
  const double nu_r = ball_measure(m, inst.x0, r).value;

  // Conclusion, measured on a grid of B_{r/18}(x0).
  {
    const GeodesicBallGrid g18(m, inst.x0, r / 18.0, n, n);
    double sub = 0.0;
    for (std::size_t k = 0; k < g18.size(); ++k)
      if (inst.u.value(g18.node(k).point) <= led.big_m) sub += g18.weight(k);
    auto rep = inequality("local growth", anchor, led.log_mu, std::log(sub / nu_r));
    rep.scale = "log";
    rep.diagnostics["ratio"] = sub / nu_r;
    rep.diagnostics["log_mu"] = led.log_mu;
    rep.diagnostics["M"] = led.big_m;
    out.push_back(rep);
  }

  // Proof pipeline on w = u + psi.
  const BarrierSpec s = make_barrier(m, inst.x0, r, led.alpha);
  const FieldFunctions w = barrier_shifted(inst.u, s);
  const ScalarField wf = ScalarField::closed_form(grid, w);
  std::size_t k0 = 0;
  double wmin = kInf;
  for (std::size_t k = 0; k < grid->size(); ++k)
    if (grid->node(k).rho < 0.5 * r && wf.value(k) < wmin) wmin = wf.value(k), k0 = k;
  const Point y0 = local_minimum(m, w.value, grid->node(k0).point, grid->dr(), 1e-15 * r);
  const double p18 = std::pow(18.0, led.alpha);
  const double level = 1.0 + p18 - std::pow(2.0, led.alpha);
  if (distance(m, inst.x0, y0) > 0.5 * r || w.value(y0) > level) {
    auto rep = rejected("growth contact location", "location Aw", "hypothesis violation: w(y0) <= 1 + 18^a - 2^a");
    out.push_back(rep);
    return out;
  }

  const double a = 1.0 / (r * r);
  const auto frame = m.tangent_frame(y0);
  Mat2 H;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) H(i, j) = w.hessian(y0, frame[i], frame[j]);
  const double lmin = std::min(H(0, 0) + H(1, 1) - std::hypot(H(0, 0) - H(1, 1), 2.0 * H(0, 1)),
                               H(0, 0) + H(1, 1) + std::hypot(H(0, 0) - H(1, 1), 2.0 * H(0, 1))) /
                      2.0;
  if (!(lmin > 10.0 * a)) {
    out.push_back(rejected("growth contact location", "location Aw", "w is not locally convex at its minimum"));
    return out;
  }
  // Contact points satisfy |grad w| = a rho(x, y) <= a r/6 near y0.
  const double zoom = 2.0 * a * (r / 6.0) / lmin;
  const int nz = std::max(128, n);
  auto zgrid = std::make_shared<const GeodesicBallGrid>(m, y0, zoom, nz, nz);
  const ScalarField wz = ScalarField::closed_form(zgrid, w);
  const ContactSearch global(wf, a), local(wz, a);
  const TransportMeasure tm = transport_measure(wz, a, y0, r / 6.0, {&global, &local});

  double max_w = -kInf, max_rho = 0.0, nu_a = 0.0, nu_a18 = 0.0, rhs = 0.0, min_d = kInf;
  bool edge = false;
  std::size_t contacts = 0;
  for (std::size_t k = 0; k < zgrid->size(); ++k) {
    if (!tm.contact[k]) continue;
    ++contacts;
    const GridNode& nd = zgrid->node(k);
    edge = edge || nd.i == zgrid->n_r() - 1;
    const double rho0 = distance(m, inst.x0, nd.point);
    max_w = std::max(max_w, wz.value(k));
    max_rho = std::max(max_rho, rho0);
    nu_a += tm.cell_measure[k];
    if (rho0 <= r / 18.0) nu_a18 += tm.cell_measure[k];
    const double D = d_bound(K, N, r, a, wz.laplacian_nu(nd.point));
    min_d = std::min(min_d, D);
    rhs += std::pow(std::max(D, 0.0), N) * tm.cell_measure[k];
  }
  if (contacts == 0 || edge) {
    out.push_back(rejected("growth contact location", "location Aw",
                           edge ? "contact set reaches the edge of the zoom window" : "empty contact set"));
    return out;
  }

  auto loc = inequality("growth contact location", "location Aw", max_w, level + 1.0 / 36.0, 1e-12);
  loc.diagnostics["max_rho_x0"] = max_rho;
  loc.diagnostics["r"] = r;
  loc.diagnostics["contact_nodes"] = static_cast<double>(contacts);
  loc.diagnostics["zoom_radius"] = zoom;
  out.push_back(loc);
  out.push_back(inequality("growth contact inside B_r", "location Aw", max_rho, r));

  const double nu_e = ball_measure(m, y0, r / 6.0).value;
  auto me = inequality("growth measure estimate for w", "me 1", nu_e, rhs, 1e-6);
  me.diagnostics["nu_A"] = nu_a;
  me.diagnostics["min_D"] = min_d;
  me.diagnostics["gap"] = (rhs - nu_e) / nu_e;
  out.push_back(me);

  const double log_bound =
      -N * std::log(18.0 * 18.0 * 18.0 * led.alpha * led.alpha * p18 * std::cosh(omega_KN(K, N) * r)) -
      4.0 * log_doubling_const(K, N, 2.0 * r);
  auto mu_est = inequality("growth mu estimate", "mu estimate", log_bound, std::log(nu_a18 / nu_r));
  mu_est.scale = "log";
  mu_est.diagnostics["ratio"] = nu_a18 / nu_r;
  out.push_back(mu_est);
  auto mu_cmp = inequality("growth mu estimate above mu", "mu estimate", led.log_mu, log_bound, 1e-12);
  mu_cmp.scale = "log";
  out.push_back(mu_cmp);

  for (auto& rep : out) {
    rep.notes["sharpness"] = kNonSharp;
    rep.diagnostics["alpha"] = led.alpha;
  }
  return out;
}

}  // namespace abplab
