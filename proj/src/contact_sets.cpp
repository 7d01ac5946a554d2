#include "abplab/contact_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace abplab {

std::vector<std::size_t> ContactSet::contact_nodes() const {
  std::vector<std::size_t> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.x_index);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ContactSet::covers_all_vertices() const {
  std::vector<char> seen(vertices.size(), 0);
  for (const auto& p : pairs) seen[p.y_index] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool ContactSet::touches_boundary(const GeodesicBallGrid& grid) const {
  for (const auto& p : pairs)
    if (grid.node(p.x_index).i == grid.n_r() - 1) return true;
  return false;
}

// ---------------------------------------------------------------------------

ContactSearch::ContactSearch(const ScalarField& u, double a, int block) : u_(u), a_(a) {
  require(a >= 0.0 && std::isfinite(a), ErrorKind::InvalidArgument, "contact opening must be >= 0");
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  for (int i0 = 0; i0 < g.n_r(); i0 += block) {
    for (int j0 = 0; j0 < g.n_theta(); j0 += block) {
      Block b;
      const int i1 = std::min(g.n_r(), i0 + block), j1 = std::min(g.n_theta(), j0 + block);
      for (int i = i0; i < i1; ++i)
        for (int j = j0; j < j1; ++j) b.members.push_back(g.index(i, j));
      b.rep = g.index((i0 + i1) / 2, (j0 + j1) / 2);
      b.min_u = kInf;
      for (std::size_t k : b.members) {
        b.radius = std::max(b.radius, distance(m, g.node(b.rep).point, g.node(k).point));
        b.min_u = std::min(b.min_u, u.value(k));
      }
      // Guard against rounding in the triangle-inequality bound.
      b.radius *= 1.0 + 1e-12;
      b.radius += 1e-15;
      blocks_.push_back(std::move(b));
    }
  }
}

ContactSearch::Result ContactSearch::minimise(const Point& y, double tie_tol) const {
  const auto& g = u_.grid();
  const ModelSpace& m = g.model();
  std::vector<std::pair<double, std::size_t>> order(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const double d = std::max(0.0, distance(m, y, g.node(blocks_[b].rep).point) - blocks_[b].radius);
    order[b] = {blocks_[b].min_u + 0.5 * a_ * d * d, b};
  }
  std::sort(order.begin(), order.end());

  double best = kInf;
  std::vector<std::pair<double, std::size_t>> cand;
  auto tol_of = [&](double v) { return tie_tol * std::max(1.0, std::abs(v)); };
  for (const auto& [lb, b] : order) {
    if (lb > best + tol_of(best)) break;
    for (std::size_t k : blocks_[b].members) {
      const double r = distance(m, y, g.node(k).point);
      const double v = u_.value(k) + 0.5 * a_ * r * r;
      if (v <= best + tol_of(std::min(best, v))) {
        cand.emplace_back(v, k);
        best = std::min(best, v);
      }
    }
  }
  Result res;
  res.min_value = best;
  const double cut = best + tol_of(best);
  for (const auto& [v, k] : cand)
    if (v <= cut) res.argmin.push_back(k);
  std::sort(res.argmin.begin(), res.argmin.end());
  return res;
}

double ContactSearch::min_value(const Point& y) const { return minimise(y, 0.0).min_value; }

namespace {

void check_vertices(const ScalarField& u, const std::vector<Point>& E) {
  require(!E.empty(), ErrorKind::InvalidArgument, "contact set: empty vertex set");
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  if (m.kind() != ModelKind::Sphere) return;
  for (const auto& y : E)
    require(distance(m, g.center(), y) + g.radius() < m.working_radius(), ErrorKind::CutLocus,
            "contact set: vertex and domain too far apart on the sphere");
}

}  // namespace

ContactSet compute_contact_set(const ScalarField& u, double a, const std::vector<Point>& E, double tie_tol) {
  check_vertices(u, E);
  ContactSearch search(u, a);
  ContactSet cs;
  cs.a = a;
  cs.vertices = E;
  const auto& g = u.grid();
  for (std::size_t yi = 0; yi < E.size(); ++yi) {
    const auto res = search.minimise(E[yi], tie_tol);
    for (std::size_t k : res.argmin) {
      ContactPair p;
      p.x_index = k;
      p.x = g.node(k).point;
      p.y_index = yi;
      p.y = E[yi];
      p.a = a;
      p.min_value = res.min_value;
      p.c = res.min_value;
      cs.pairs.push_back(p);
    }
  }
  return cs;
}

ContactSet compute_contact_set_bruteforce(const ScalarField& u, double a, const std::vector<Point>& E,
                                          double tie_tol) {
  check_vertices(u, E);
  require(a >= 0.0, ErrorKind::InvalidArgument, "contact opening must be >= 0");
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  ContactSet cs;
  cs.a = a;
  cs.vertices = E;
  std::vector<double> vals(g.size());
  for (std::size_t yi = 0; yi < E.size(); ++yi) {
    double best = kInf;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double r = distance(m, E[yi], g.node(k).point);
      vals[k] = u.value(k) + 0.5 * a * r * r;
      best = std::min(best, vals[k]);
    }
    const double cut = best + tie_tol * std::max(1.0, std::abs(best));
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (vals[k] > cut) continue;
      ContactPair p;
      p.x_index = k;
      p.x = g.node(k).point;
      p.y_index = yi;
      p.y = E[yi];
      p.a = a;
      p.min_value = best;
      p.c = best;
      cs.pairs.push_back(p);
    }
  }
  return cs;
}

double gradient_contact_residual(const ContactPair& pair, const ScalarField& u) {
  require(u.has_closed_form(), ErrorKind::MissingClosedForm, "gradient residual needs a closed-form field");
  const ModelSpace& m = u.model();
  const Vec3 g = u.gradient(pair.x);
  const Vec3 l = log_map(m, pair.x, pair.y).components;
  return m.norm(g - pair.a * l);
}

std::vector<Point> ball_vertices(const ModelSpace& m, const Point& c, double s, int n_r, int n_theta) {
  std::vector<Point> out{c};
  const GeodesicBallGrid g(m, c, s, n_r, n_theta);
  for (const auto& nd : g.nodes()) out.push_back(nd.point);
  // Include the boundary circle so the closed ball is represented.
  for (int j = 0; j < n_theta; ++j) out.push_back(g.point_at(s, j * g.dtheta()));
  return out;
}

Reports check_contact_location(const ScalarField& u, double a, const Point& y0, double l, double t) {
  const char* anchor = "contact location";
  const auto& g = u.grid();
  const ModelSpace& m = g.model();
  const Point& x0 = g.center();
  const double r = g.radius();

  auto reject = [&](const std::string& premise) {
    auto rep = rejected("contact location", anchor, "hypothesis violation: " + premise);
    rep.notes["premise"] = premise;
    return Reports{rep};
  };
  if (!(l < t)) return reject("l < t");
  if (distance(m, x0, y0) > 0.5 * r) return reject("y0 in closed B_{r/2}(x0)");
  if (u.has_closed_form() && std::abs(u.eval(y0) - l) > 1e-9 * std::max(1.0, std::abs(l)))
    return reject("u(y0) = l");
  double u_annulus = kInf;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.node(k).rho >= 5.0 * r / 6.0) u_annulus = std::min(u_annulus, u.value(k));
  if (u_annulus < t) return reject("u >= t on B_r minus B_{5r/6}");

  const auto E = ball_vertices(m, y0, r / 6.0, 8, 32);
  const auto cs = compute_contact_set(u, a, E);

  // Grid tolerance: the contact inequality is only tested at nodes, and y0
  // need not be a node.
  const double cell = std::max(g.dr(), g.radius() * g.dtheta());
  double near = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (distance(m, g.node(k).point, y0) <= cell) near = std::max(near, u.value(k) - l);
  const double grid_tol = std::max(0.0, near) + a * cell * (r / 3.0 + cell);

  double max_rho = 0.0, max_u = -kInf;
  for (const auto& p : cs.pairs) {
    max_rho = std::max(max_rho, g.node(p.x_index).rho);
    max_u = std::max(max_u, u.value(p.x_index));
  }
  Reports out;
  auto inside = inequality("contact inside B_{5r/6}", anchor, max_rho, 5.0 * r / 6.0);
  inside.diagnostics["pairs"] = static_cast<double>(cs.pairs.size());
  out.push_back(inside);
  auto sub = inequality("contact in sublevel set", anchor, max_u, l + a * r * r / 36.0, 0.0, grid_tol);
  sub.diagnostics["grid_tol"] = grid_tol;
  out.push_back(sub);
  return out;
}

}  // namespace abplab
