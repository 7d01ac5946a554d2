#include "abplab/model_space.hpp"

#include "abplab/polar_grid.hpp"

#include <cmath>
#include <sstream>

namespace abplab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::CutLocus: return "cut-locus";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::MissingClosedForm: return "missing-closed-form";
    case ErrorKind::Hypothesis: return "hypothesis-violation";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Convergence: return "non-convergence";
    case ErrorKind::NonPositiveDeterminant: return "nonpositive-determinant";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Euclidean: return "euclidean";
    case ModelKind::Sphere: return "sphere";
    case ModelKind::Hyperbolic: return "hyperbolic";
    case ModelKind::GaussianPlane: return "gaussian";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "euclidean") return ModelKind::Euclidean;
  if (s == "sphere") return ModelKind::Sphere;
  if (s == "hyperbolic") return ModelKind::Hyperbolic;
  if (s == "gaussian" || s == "gaussian_plane") return ModelKind::GaussianPlane;
  throw Error(ErrorKind::Config, "unknown model kind '" + s + "'");
}

ModelSpace ModelSpace::euclidean() { return ModelSpace(ModelKind::Euclidean, 0.0, 0.0); }

ModelSpace ModelSpace::sphere(double k) {
  require(k > 0.0 && std::isfinite(k), ErrorKind::InvalidArgument, "sphere curvature must be > 0");
  return ModelSpace(ModelKind::Sphere, k, 0.0);
}

ModelSpace ModelSpace::hyperbolic(double k) {
  require(k > 0.0 && std::isfinite(k), ErrorKind::InvalidArgument, "hyperbolic curvature magnitude must be > 0");
  return ModelSpace(ModelKind::Hyperbolic, k, 0.0);
}

ModelSpace ModelSpace::gaussian_plane(double lambda) {
  require(std::isfinite(lambda), ErrorKind::InvalidArgument, "gaussian weight coefficient must be finite");
  return ModelSpace(ModelKind::GaussianPlane, 0.0, lambda);
}

double ModelSpace::curvature() const {
  switch (kind_) {
    case ModelKind::Sphere: return k_;
    case ModelKind::Hyperbolic: return -k_;
    default: return 0.0;
  }
}

double ModelSpace::cut_radius() const {
  return kind_ == ModelKind::Sphere ? kPi / std::sqrt(k_) : kInf;
}

double ModelSpace::working_radius() const {
  return kind_ == ModelKind::Sphere ? kPi / (2.0 * std::sqrt(k_)) : kInf;
}

std::string ModelSpace::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == ModelKind::Sphere || kind_ == ModelKind::Hyperbolic) os << "(k=" << k_ << ")";
  if (kind_ == ModelKind::GaussianPlane) os << "(lambda=" << lambda_ << ")";
  return os.str();
}

double ModelSpace::inner(const Vec3& a, const Vec3& b) const {
  if (kind_ == ModelKind::Hyperbolic) return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return a.dot(b);
}

double ModelSpace::norm(const Vec3& a) const {
  return std::sqrt(std::max(0.0, inner(a, a)));
}

Point ModelSpace::origin() const {
  switch (kind_) {
    case ModelKind::Sphere: return Point{Vec3(0.0, 0.0, 1.0 / std::sqrt(k_))};
    case ModelKind::Hyperbolic: return Point{Vec3(1.0 / std::sqrt(k_), 0.0, 0.0)};
    default: return Point{Vec3::Zero()};
  }
}

Point ModelSpace::from_plane(double x, double y) const {
  if (is_planar()) return Point{Vec3(x, y, 0.0)};
  const Point o = origin();
  const auto frame = tangent_frame(o);
  return exp_map(*this, TangentVector{o, x * frame[0] + y * frame[1]});
}

double ModelSpace::constraint_residual(const Point& p) const {
  switch (kind_) {
    case ModelKind::Sphere: return std::abs(p.coords.squaredNorm() - 1.0 / k_) * k_;
    case ModelKind::Hyperbolic: {
      const double r = std::abs(inner(p.coords, p.coords) + 1.0 / k_) * k_;
      return p.coords[0] > 0.0 ? r : kInf;
    }
    default: return std::abs(p.coords[2]);
  }
}

double ModelSpace::tangency_residual(const TangentVector& v) const {
  switch (kind_) {
    case ModelKind::Sphere:
    case ModelKind::Hyperbolic:
      return std::abs(inner(v.components, v.base.coords)) * std::sqrt(k_);
    default: return std::abs(v.components[2]);
  }
}

double ModelSpace::potential(const Point& p) const {
  if (kind_ != ModelKind::GaussianPlane) return 0.0;
  return 0.5 * lambda_ * (p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1]);
}

Vec3 ModelSpace::potential_gradient(const Point& p) const {
  if (kind_ != ModelKind::GaussianPlane) return Vec3::Zero();
  return Vec3(lambda_ * p.coords[0], lambda_ * p.coords[1], 0.0);
}

double ModelSpace::potential_hessian(const Point&, const Vec3& a, const Vec3& b) const {
  if (kind_ != ModelKind::GaussianPlane) return 0.0;
  return lambda_ * (a[0] * b[0] + a[1] * b[1]);
}

Vec3 ModelSpace::project_tangent(const Point& p, const Vec3& v) const {
  switch (kind_) {
    case ModelKind::Sphere: return v - k_ * v.dot(p.coords) * p.coords;
    case ModelKind::Hyperbolic: return v + k_ * inner(v, p.coords) * p.coords;
    default: return Vec3(v[0], v[1], 0.0);
  }
}

std::array<Vec3, 2> ModelSpace::tangent_frame(const Point& p) const {
  switch (kind_) {
    case ModelKind::Sphere: {
      const Vec3 ph = p.coords.normalized();
      int axis = 0;
      for (int i = 1; i < 3; ++i)
        if (std::abs(ph[i]) < std::abs(ph[axis])) axis = i;
      // Prefer x then y so the frame at the north pole is (e_x, e_y).
      Vec3 a = Vec3::Zero();
      a[axis] = 1.0;
      if (std::abs(ph[0]) < 0.9) a = Vec3::UnitX();
      const Vec3 e1 = (a - a.dot(ph) * ph).normalized();
      const Vec3 e2 = ph.cross(e1);
      return {e1, e2};
    }
    case ModelKind::Hyperbolic: {
      const Vec3 a = project_tangent(p, Vec3::UnitY());
      const Vec3 e1 = a / norm(a);
      Vec3 b = project_tangent(p, Vec3::UnitZ());
      b -= inner(b, e1) * e1;
      return {e1, b / norm(b)};
    }
    default: return {Vec3::UnitX(), Vec3::UnitY()};
  }
}

double ModelSpace::polar_psi(double rho) const {
  const double s = std::sqrt(k_);
  switch (kind_) {
    case ModelKind::Sphere: return std::sin(s * rho) / s;
    case ModelKind::Hyperbolic: return std::sinh(s * rho) / s;
    default: return rho;
  }
}

double ModelSpace::polar_psi_log_derivative(double rho) const {
  const double s = std::sqrt(k_);
  switch (kind_) {
    case ModelKind::Sphere: return s / std::tan(s * rho);
    case ModelKind::Hyperbolic: return s / std::tanh(s * rho);
    default: return 1.0 / rho;
  }
}

double ModelSpace::distance_hessian_transverse(double rho) const {
  if (rho < 1e-8) return 1.0;
  return rho * polar_psi_log_derivative(rho);
}

// ---------------------------------------------------------------------------

double distance(const ModelSpace& m, const Point& p, const Point& q) {
  switch (m.kind()) {
    case ModelKind::Sphere: {
      const double s = std::sqrt(m.k());
      const Vec3 a = s * p.coords;
      const Vec3 b = s * q.coords;
      const double ang = std::atan2(a.cross(b).norm(), a.dot(b));
      require(ang < kPi - 1e-9, ErrorKind::CutLocus, "distance: antipodal pair on the sphere");
      return ang / s;
    }
    case ModelKind::Hyperbolic: {
      const Vec3 d = p.coords - q.coords;
      const double chord2 = std::max(0.0, m.inner(d, d));
      const double s = std::sqrt(m.k());
      return 2.0 * std::asinh(0.5 * s * std::sqrt(chord2)) / s;
    }
    default: return (p.coords - q.coords).head<2>().norm();
  }
}

Point geodesic_point(const ModelSpace& m, const Point& p, const Vec3& unit_dir, double t) {
  const double s = std::sqrt(m.k());
  Point out;
  switch (m.kind()) {
    case ModelKind::Sphere:
      out.coords = std::cos(s * t) * p.coords + (std::sin(s * t) / s) * unit_dir;
      out.coords *= (1.0 / s) / out.coords.norm();
      return out;
    case ModelKind::Hyperbolic: {
      out.coords = std::cosh(s * t) * p.coords + (std::sinh(s * t) / s) * unit_dir;
      // Keep the time coordinate consistent with the space part so repeated
      // steps stay on the sheet.
      const double q2 = out.coords[1] * out.coords[1] + out.coords[2] * out.coords[2];
      out.coords[0] = std::sqrt(1.0 / m.k() + q2);
      return out;
    }
    default: return Point{p.coords + t * unit_dir};
  }
}

Point exp_map(const ModelSpace& m, const TangentVector& v) {
  const double len = m.norm(v.components);
  require(len < m.cut_radius(), ErrorKind::CutLocus, "exp_map: tangent norm exceeds the cut radius");
  if (len == 0.0) return v.base;
  if (m.is_planar()) return Point{v.base.coords + Vec3(v.components[0], v.components[1], 0.0)};
  return geodesic_point(m, v.base, v.components / len, len);
}

TangentVector log_map(const ModelSpace& m, const Point& p, const Point& q) {
  const double rho = distance(m, p, q);
  require(rho < m.cut_radius(), ErrorKind::CutLocus, "log_map: points beyond the cut radius");
  if (m.is_planar()) {
    const Vec3 d = q.coords - p.coords;
    return TangentVector{p, Vec3(d[0], d[1], 0.0)};
  }
  if (rho == 0.0) return TangentVector{p, Vec3::Zero()};
  const Vec3 w = m.project_tangent(p, q.coords);
  const double wn = m.norm(w);
  if (wn == 0.0) return TangentVector{p, Vec3::Zero()};
  return TangentVector{p, (rho / wn) * w};
}

BallMeasure ball_measure(const ModelSpace& m, const Point& center, double r) {
  require(r >= 0.0, ErrorKind::InvalidArgument, "ball_measure: negative radius");
  require(r < m.cut_radius(), ErrorKind::CutLocus, "ball_measure: radius beyond the cut radius");
  const double s = std::sqrt(m.k());
  switch (m.kind()) {
    case ModelKind::Euclidean: return {kPi * r * r, true};
    case ModelKind::Sphere: return {2.0 * kPi * (1.0 - std::cos(s * r)) / m.k(), true};
    case ModelKind::Hyperbolic: return {2.0 * kPi * (std::cosh(s * r) - 1.0) / m.k(), true};
    case ModelKind::GaussianPlane: {
      if (center.coords.head<2>().norm() == 0.0) {
        const double lam = m.lambda();
        if (lam == 0.0) return {kPi * r * r, true};
        return {-(2.0 * kPi / lam) * std::expm1(-0.5 * lam * r * r), true};
      }
      const auto grid = build_polar_grid(m, center, r, 256, 256);
      return {grid.total_measure(), false};
    }
  }
  return {0.0, false};
}

double bakry_emery_ricci(const ModelSpace& m, double N, const Point& p, const Vec3& v) {
  const double v2 = m.inner(v, v);
  double ric = m.curvature() * v2;  // n = 2: Ric = (Gauss curvature) g
  if (!m.has_weight()) return ric;
  require(N > m.dim(), ErrorKind::InvalidArgument, "Ric_{N,nu} with N = n requires V = 0");
  ric += m.potential_hessian(p, v, v);
  if (std::isfinite(N)) {
    const double dv = m.potential_gradient(p).dot(v);
    ric -= dv * dv / (N - m.dim());
  }
  return ric;
}

double ricci_lower_bound(const ModelSpace& m, double N, double ball_radius) {
  return ricci_lower_bound(m, N, m.origin(), ball_radius);
}

double ricci_lower_bound(const ModelSpace& m, double N, const Point& center, double ball_radius) {
  require(N >= m.dim(), ErrorKind::InvalidArgument, "effective dimension N must be >= n");
  if (!m.has_weight()) return m.curvature();
  require(N > m.dim(), ErrorKind::InvalidArgument, "Ric_{N,nu} with N = n requires V = 0");
  const double lam = m.lambda();
  if (!std::isfinite(N)) return lam;
  const double rmax = center.coords.head<2>().norm() + ball_radius;
  // Eigenvalues of lam I - lam^2 x x^T/(N-2): lam and lam - lam^2 |x|^2/(N-2).
  return std::min(lam, lam - lam * lam * rmax * rmax / (N - m.dim()));
}

double weighted_laplacian_half_dist2(const ModelSpace& m, const Point& c, const Point& p) {
  const double rho = distance(m, c, p);
  double lap = 1.0 + m.distance_hessian_transverse(rho);
  if (m.has_weight()) {
    // grad(rho_c^2/2)(p) = p - c in the plane.
    lap -= m.potential_gradient(p).dot(p.coords - c.coords);
  }
  return lap;
}

}  // namespace abplab
