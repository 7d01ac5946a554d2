#pragma once

#include "abplab/common.hpp"

#include <array>
#include <string>

namespace abplab {

enum class ModelKind { Euclidean, Sphere, Hyperbolic, GaussianPlane };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

/// A point stored in embedding coordinates.
///   plane:      (x, y, 0)
///   sphere:     |p|^2 = 1/k
///   hyperbolic: -p0^2 + p1^2 + p2^2 = -1/k, p0 > 0
struct Point {
  Vec3 coords = Vec3::Zero();
};

struct TangentVector {
  Point base;
  Vec3 components = Vec3::Zero();
};

/// Closed-form Riemannian metric-measure space in dimension 2:
/// (M, g, nu = e^{-V} vol_g).
class ModelSpace {
 public:
  static ModelSpace euclidean();
  static ModelSpace sphere(double k);
  static ModelSpace hyperbolic(double k);
  static ModelSpace gaussian_plane(double lambda);

  ModelKind kind() const { return kind_; }
  int dim() const { return 2; }
  /// Sectional curvature magnitude (sphere/hyperbolic), 0 otherwise.
  double k() const { return k_; }
  double lambda() const { return lambda_; }
  /// Signed sectional curvature: +k, -k or 0.
  double curvature() const;
  bool is_planar() const { return kind_ == ModelKind::Euclidean || kind_ == ModelKind::GaussianPlane; }
  bool has_weight() const { return kind_ == ModelKind::GaussianPlane && lambda_ != 0.0; }

  /// Injectivity radius: pi/sqrt(k) on the sphere, +inf otherwise.
  double cut_radius() const;
  /// Largest admissible working-domain radius: pi/(2 sqrt(k)) on the sphere.
  double working_radius() const;

  std::string describe() const;

  // Ambient inner product: Euclidean, or Minkowski (-,+,+) on the hyperboloid.
  double inner(const Vec3& a, const Vec3& b) const;
  double norm(const Vec3& a) const;

  Point origin() const;
  /// Point from chart coordinates; for curved models (x, y) are taken as the
  /// tangent vector at origin() and mapped through exp.
  Point from_plane(double x, double y) const;
  /// Embedding constraint residual (|p|^2 - 1/k on the sphere etc.).
  double constraint_residual(const Point& p) const;
  double tangency_residual(const TangentVector& v) const;

  double potential(const Point& p) const;            ///< V(p)
  Vec3 potential_gradient(const Point& p) const;     ///< grad V as tangent components
  /// Hess V(a, b) at p for tangent a, b (zero off the gaussian plane).
  double potential_hessian(const Point& p, const Vec3& a, const Vec3& b) const;

  /// Orthonormal frame (e1, e2) of T_p M, deterministic in p.
  std::array<Vec3, 2> tangent_frame(const Point& p) const;
  /// Projection of an ambient vector onto T_p M.
  Vec3 project_tangent(const Point& p, const Vec3& v) const;

  /// Metric coefficient of geodesic polar coordinates: rho, sin(sqrt k rho)/sqrt k, ...
  double polar_psi(double rho) const;
  /// psi'(rho) / psi(rho).
  double polar_psi_log_derivative(double rho) const;
  /// Transverse eigenvalue of Hess(rho^2/2): rho psi'/psi.
  double distance_hessian_transverse(double rho) const;

 private:
  ModelSpace(ModelKind kind, double k, double lambda) : kind_(kind), k_(k), lambda_(lambda) {}
  ModelKind kind_;
  double k_;
  double lambda_;
};

// Geometry operations -------------------------------------------------------

double distance(const ModelSpace& m, const Point& p, const Point& q);
Point exp_map(const ModelSpace& m, const TangentVector& v);
TangentVector log_map(const ModelSpace& m, const Point& p, const Point& q);

/// Unit-speed geodesic point at distance t along unit direction `dir`.
Point geodesic_point(const ModelSpace& m, const Point& p, const Vec3& unit_dir, double t);

struct BallMeasure {
  double value = 0.0;
  bool closed_form = true;  ///< false when computed by grid quadrature
};

BallMeasure ball_measure(const ModelSpace& m, const Point& center, double r);

/// Greatest K' with Ric_{N,nu} >= K' g on the ball B_R(center); N = +inf allowed.
double ricci_lower_bound(const ModelSpace& m, double N, double ball_radius);
double ricci_lower_bound(const ModelSpace& m, double N, const Point& center, double ball_radius);
/// Ric_{N,nu}(v, v) at p.
double bakry_emery_ricci(const ModelSpace& m, double N, const Point& p, const Vec3& v);

/// Laplacian of rho_c^2 / 2 with the weight correction, at distance rho along
/// the geodesic from c through p (closed form used by the comparison checks).
double weighted_laplacian_half_dist2(const ModelSpace& m, const Point& c, const Point& p);

}  // namespace abplab
