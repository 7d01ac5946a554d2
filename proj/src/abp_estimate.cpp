#include "abplab/abp_estimate.hpp"

#include <cmath>
#include <limits>

namespace abplab {

double d_bound(double K, double N, double r, double a, double lap_nu_u) {
  require(a > 0.0, ErrorKind::InvalidArgument, "d_bound: a must be > 0");
  require(K >= 0.0, ErrorKind::InvalidArgument, "d_bound: K must be >= 0");
  if (!std::isfinite(N)) return 2.0 * r * r * K + lap_nu_u / a;
  const double t = r * omega_KN(K, N);
  return calS(t) * (calH(t) + lap_nu_u / (N * a));
}

namespace {

// nu-measure of {phi <= 0} in every cell, phi linearised from node values.
std::vector<double> cut_cell_measures(const GeodesicBallGrid& g, const std::vector<double>& phi) {
  const int nr = g.n_r(), nt = g.n_theta();
  const double h = g.dr(), dt = g.dtheta();
  std::vector<double> out(g.size(), 0.0);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = g.index(i, j);
      const double f = phi[k];
      double gr;
      if (i == nr - 1) {
        gr = (f - phi[g.index(i - 1, j)]) / h;
      } else if (i == 0) {
        // The node across the pole sits at rho = -h/2 on this ray.
        if (nt % 2 == 0)
          gr = (phi[g.index(1, j)] - phi[g.index(0, j + nt / 2)]) / (2.0 * h);
        else
          gr = (phi[g.index(1, j)] - f) / h;
      } else {
        gr = (phi[g.index(i + 1, j)] - phi[g.index(i - 1, j)]) / (2.0 * h);
      }
      const double gt = (phi[g.index(i, j + 1)] - phi[g.index(i, j - 1)]) / (2.0 * dt);
      out[k] = g.clipped_cell_measure(i, j, f, gr, gt);
    }
  }
  return out;
}

}  // namespace

std::vector<double> ball_cell_measure(const GeodesicBallGrid& g, const Point& c, double s) {
  std::vector<double> phi(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) phi[k] = distance(g.model(), g.node(k).point, c) - s;
  return cut_cell_measures(g, phi);
}

TransportMeasure transport_measure(const ScalarField& u, double a, const Point& e_center, double e_radius,
                                   const std::vector<const ContactSearch*>& searches, double touch_tol) {
  require(a > 0.0, ErrorKind::InvalidArgument, "transport_measure: a must be > 0");
  require(u.has_closed_form(), ErrorKind::MissingClosedForm, "transport_measure: u needs a closed form");
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  const std::size_t n = g.size();
  TransportMeasure tm;
  tm.cell_measure.assign(n, 0.0);
  tm.contact.assign(n, 0);
  tm.image.resize(n);
  tm.image_valid.assign(n, 0);

  std::vector<double> phi(n);
  const double far = 4.0 * (g.radius() + e_radius);
  for (std::size_t k = 0; k < n; ++k) {
    const Point& x = g.node(k).point;
    const Vec3 v = m.project_tangent(x, u.gradient(x) / a);
    if (m.norm(v) < 0.999 * m.cut_radius()) {
      tm.image[k] = exp_map(m, TangentVector{x, v});
      tm.image_valid[k] = 1;
      phi[k] = distance(m, tm.image[k], e_center) - e_radius;
    } else {
      tm.image[k] = x;
      phi[k] = far;
    }
  }
  const std::vector<double> cells = cut_cell_measures(g, phi);
  for (std::size_t k = 0; k < n; ++k) {
    if (cells[k] <= 0.0 || !tm.image_valid[k]) continue;
    ++tm.candidates;
    const Point& x = g.node(k).point;
    const double rr = distance(m, x, tm.image[k]);
    const double val = u.value(k) + 0.5 * a * rr * rr;
    bool touches = true;
    for (const ContactSearch* s : searches) {
      if (val > s->min_value(tm.image[k]) + touch_tol * std::max(1.0, std::abs(val))) {
        touches = false;
        break;
      }
    }
    if (!touches) {
      ++tm.rejected;
      continue;
    }
    tm.contact[k] = 1;
    tm.cell_measure[k] = cells[k];
  }
  return tm;
}

AbpResult abp_check(const AbpInstance& inst) {
  const char* anchor = "Measure Estimate Formula";
  const ScalarField& u = inst.u;
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  const double r = g.radius();
  AbpResult res;
  res.nu_e_exact = std::numeric_limits<double>::quiet_NaN();

  auto reject = [&](const std::string& why) {
    res.report = rejected("measure estimate", anchor, why);
    return res;
  };
  require(inst.a > 0.0, ErrorKind::InvalidArgument, "abp_check: a must be > 0");
  require(inst.K >= 0.0, ErrorKind::InvalidArgument, "abp_check: K must be >= 0");
  require(inst.N >= 2.0, ErrorKind::InvalidArgument, "abp_check: N must be >= 2");

  const double k_needed = std::max(0.0, -ricci_lower_bound(m, inst.N, g.center(), r));
  if (inst.K < k_needed - 1e-12) return reject("hypothesis violation: Ric_{N,nu} >= -K g on B_r");
  if (distance(m, g.center(), inst.e_center) + inst.e_radius >= r)
    return reject("hypothesis violation: E inside B_r");

  // Hypothesis A(a, E/B_r, u) inside the open ball, from the direct search.
  const auto verts = ball_vertices(m, inst.e_center, inst.e_radius, 8, 32);
  const ContactSet cs = compute_contact_set(u, inst.a, verts);
  if (cs.touches_boundary(g)) return reject("hypothesis violation: contact set touches the boundary of B_r");

  const ContactSearch search(u, inst.a);
  const TransportMeasure tm = transport_measure(u, inst.a, inst.e_center, inst.e_radius, {&search});
  const std::vector<double> e_cells = ball_cell_measure(g, inst.e_center, inst.e_radius);

  double lhs = 0.0;
  for (double v : e_cells) lhs += v;

  const bool finite = std::isfinite(inst.N);
  double rhs = 0.0, rhs_nodes = 0.0, min_d = kInf;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!tm.contact[k]) continue;
    ++res.contact_nodes;
    const Point& x = g.node(k).point;
    const double D = d_bound(inst.K, inst.N, r, inst.a, u.laplacian_nu(x));
    min_d = std::min(min_d, D);
    if (D < -1e-3) ++res.anomalies;
    const double f = finite ? std::pow(std::max(D, 0.0), inst.N) : std::exp(D);
    rhs += f * tm.cell_measure[k];
    if (distance(m, tm.image[k], inst.e_center) <= inst.e_radius) rhs_nodes += f * g.weight(k);
  }

  res.lhs = lhs;
  res.rhs = rhs;
  res.rhs_nodes = rhs_nodes;
  res.min_d = res.contact_nodes ? min_d : 0.0;
  const BallMeasure bm = ball_measure(m, inst.e_center, inst.e_radius);
  if (bm.closed_form) res.nu_e_exact = bm.value;

  res.report = inequality("measure estimate", anchor, lhs, rhs, inst.rel_tol, inst.quad_tol);
  auto& d = res.report.diagnostics;
  d["gap"] = (rhs - lhs) / lhs;
  d["rhs_node_count"] = rhs_nodes;
  d["contact_nodes"] = static_cast<double>(res.contact_nodes);
  d["candidates"] = static_cast<double>(tm.candidates);
  d["touch_rejected"] = static_cast<double>(tm.rejected);
  d["anomalies"] = static_cast<double>(res.anomalies);
  d["min_D"] = res.min_d;
  if (bm.closed_form) d["nu_E_closed_form"] = bm.value;
  d["K"] = inst.K;
  d["N"] = inst.N;
  return res;
}

}  // namespace abplab
