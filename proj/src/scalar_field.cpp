#include "abplab/scalar_field.hpp"

#include <cmath>

namespace abplab {

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(grid_ != nullptr, ErrorKind::InvalidArgument, "scalar field without grid");
  require(values_.size() == grid_->size(), ErrorKind::InvalidArgument, "scalar field size mismatch");
  for (double v : values_) require(std::isfinite(v), ErrorKind::InvalidArgument, "scalar field value not finite");
}

ScalarField ScalarField::closed_form(GridPtr grid, FieldFunctions fns) {
  require(static_cast<bool>(fns.value), ErrorKind::InvalidArgument, "closed form needs a value function");
  std::vector<double> vals(grid->size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = fns.value(grid->node(k).point);
  ScalarField f(std::move(grid), std::move(vals));
  f.fns_ = std::move(fns);
  return f;
}

double ScalarField::eval(const Point& p) const {
  require(has_closed_form(), ErrorKind::MissingClosedForm, "field has no closed form");
  return fns_.value(p);
}

Vec3 ScalarField::gradient(const Point& p) const {
  require(has_closed_form(), ErrorKind::MissingClosedForm, "field has no closed form");
  if (fns_.gradient) return fns_.gradient(p);
  return fd_gradient(model(), fns_.value, p);
}

Mat2 ScalarField::hessian(const Point& p, const std::array<Vec3, 2>& b) const {
  require(has_closed_form(), ErrorKind::MissingClosedForm, "field has no closed form");
  if (fns_.hessian) {
    Mat2 H;
    H(0, 0) = fns_.hessian(p, b[0], b[0]);
    H(1, 1) = fns_.hessian(p, b[1], b[1]);
    H(0, 1) = H(1, 0) = fns_.hessian(p, b[0], b[1]);
    return H;
  }
  return fd_hessian(model(), fns_.value, p, b);
}

double ScalarField::laplacian_nu(const Point& p) const { return abplab::laplacian_nu(model(), *this, p); }

// ---------------------------------------------------------------------------

Vec3 fd_gradient(const ModelSpace& m, const std::function<double(const Point&)>& f, const Point& p, double h) {
  const auto b = m.tangent_frame(p);
  Vec3 g = Vec3::Zero();
  for (const Vec3& e : b) {
    const double d = (-f(geodesic_point(m, p, e, 2 * h)) + 8 * f(geodesic_point(m, p, e, h)) -
                      8 * f(geodesic_point(m, p, e, -h)) + f(geodesic_point(m, p, e, -2 * h))) /
                     (12 * h);
    g += d * e;
  }
  return g;
}

double fd_second_directional(const ModelSpace& m, const std::function<double(const Point&)>& f,
                             const Point& p, const Vec3& e, double h) {
  return (-f(geodesic_point(m, p, e, 2 * h)) + 16 * f(geodesic_point(m, p, e, h)) - 30 * f(p) +
          16 * f(geodesic_point(m, p, e, -h)) - f(geodesic_point(m, p, e, -2 * h))) /
         (12 * h * h);
}

Mat2 fd_hessian(const ModelSpace& m, const std::function<double(const Point&)>& f, const Point& p,
                const std::array<Vec3, 2>& b, double h) {
  Mat2 H;
  H(0, 0) = fd_second_directional(m, f, p, b[0], h);
  H(1, 1) = fd_second_directional(m, f, p, b[1], h);
  const double s = 1.0 / std::sqrt(2.0);
  const double dp = fd_second_directional(m, f, p, s * (b[0] + b[1]), h);
  const double dm = fd_second_directional(m, f, p, s * (b[0] - b[1]), h);
  H(0, 1) = H(1, 0) = 0.5 * (dp - dm);
  return H;
}

Vec3 distance_gradient(const ModelSpace& m, const Point& c, const Point& p) {
  const TangentVector v = log_map(m, p, c);
  const double n = m.norm(v.components);
  if (n == 0.0) return Vec3::Zero();
  return -v.components / n;
}

double hessian_half_dist2(const ModelSpace& m, const Point& c, const Point& p, const Vec3& a, const Vec3& b) {
  const double ab = m.inner(a, b);
  if (m.is_planar()) return ab;
  const double rho = distance(m, c, p);
  if (rho == 0.0) return ab;
  const Vec3 n = distance_gradient(m, c, p);
  const double na = m.inner(n, a), nb = m.inner(n, b);
  const double tau = m.distance_hessian_transverse(rho);
  return na * nb + tau * (ab - na * nb);
}

double laplacian_nu(const ModelSpace& m, const ScalarField& u, const Point& p) {
  const auto b = m.tangent_frame(p);
  const Mat2 H = u.hessian(p, b);
  double lap = H.trace();
  if (m.has_weight()) lap -= m.potential_gradient(p).dot(u.gradient(p));
  return lap;
}

double radial_laplacian_nu(const ModelSpace& m, const Point& c, const Point& p, double f1, double f2) {
  const double rho = distance(m, c, p);
  if (rho < 1e-12) return 2.0 * f2;
  double lap = f2 + m.polar_psi_log_derivative(rho) * f1;
  if (m.has_weight()) lap -= m.potential_gradient(p).dot(distance_gradient(m, c, p)) * f1;
  return lap;
}

// ---------------------------------------------------------------------------

DiscreteLaplacian::DiscreteLaplacian(GridPtr grid) : grid_(std::move(grid)) {
  const auto& g = *grid_;
  const ModelSpace& m = g.model();
  const double h = g.dr(), dt = g.dtheta();
  auto omega = [&](double rho, double th) {
    return m.has_weight() ? std::exp(-m.potential(g.point_at(rho, th))) : 1.0;
  };
  rows_.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const GridNode& nd = g.node(k);
    const double psi = g.psi(nd.rho);
    const double w0 = omega(nd.rho, nd.theta);
    Row& r = rows_[k];
    r.out = g.psi(nd.rho + 0.5 * h) * omega(nd.rho + 0.5 * h, nd.theta) / (psi * w0 * h * h);
    r.in = nd.i == 0 ? 0.0 : g.psi(nd.rho - 0.5 * h) * omega(nd.rho - 0.5 * h, nd.theta) / (psi * w0 * h * h);
    r.left = omega(nd.rho, nd.theta - 0.5 * dt) / (psi * psi * w0 * dt * dt);
    r.right = omega(nd.rho, nd.theta + 0.5 * dt) / (psi * psi * w0 * dt * dt);
  }
}

double DiscreteLaplacian::apply(const std::vector<double>& u, std::size_t k) const {
  const auto& g = *grid_;
  const GridNode& nd = g.node(k);
  require(nd.i < g.n_r() - 1, ErrorKind::InvalidArgument, "discrete Laplacian at a boundary node");
  const Row& r = rows_[k];
  const double uk = u[k];
  double s = r.out * (u[g.index(nd.i + 1, nd.j)] - uk);
  if (nd.i > 0) s += r.in * (u[g.index(nd.i - 1, nd.j)] - uk);
  s += r.left * (u[g.index(nd.i, nd.j - 1)] - uk);
  s += r.right * (u[g.index(nd.i, nd.j + 1)] - uk);
  return s;
}

double DiscreteLaplacian::apply(const std::vector<double>& u, const std::vector<double>& gb, std::size_t k) const {
  const auto& g = *grid_;
  const GridNode& nd = g.node(k);
  if (nd.i < g.n_r() - 1) return apply(u, k);
  const Row& r = rows_[k];
  const double uk = u[k];
  double s = r.out * 2.0 * (gb[nd.j] - uk);
  if (nd.i > 0) s += r.in * (u[g.index(nd.i - 1, nd.j)] - uk);
  s += r.left * (u[g.index(nd.i, nd.j - 1)] - uk);
  s += r.right * (u[g.index(nd.i, nd.j + 1)] - uk);
  return s;
}

double laplacian_nu_discrete(const ScalarField& u, std::size_t k) {
  DiscreteLaplacian L(u.grid_ptr());
  return L.apply(u.values(), k);
}

}  // namespace abplab
