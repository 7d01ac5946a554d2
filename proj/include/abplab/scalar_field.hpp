#pragma once

#include "abplab/polar_grid.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace abplab {

using GridPtr = std::shared_ptr<const GeodesicBallGrid>;

/// Analytic evaluators of a function. `gradient` and `hessian` may be left
/// empty; derivatives then come from geodesic finite differences of `value`.
struct FieldFunctions {
  std::function<double(const Point&)> value;
  std::function<Vec3(const Point&)> gradient;
  std::function<double(const Point&, const Vec3&, const Vec3&)> hessian;  ///< Hess u(a, b)
};

class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values);
  static ScalarField closed_form(GridPtr grid, FieldFunctions fns);

  const GridPtr& grid_ptr() const { return grid_; }
  const GeodesicBallGrid& grid() const { return *grid_; }
  const ModelSpace& model() const { return grid_->model(); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t k) const { return values_[k]; }

  bool has_closed_form() const { return static_cast<bool>(fns_.value); }
  bool has_analytic_gradient() const { return static_cast<bool>(fns_.gradient); }
  bool has_analytic_hessian() const { return static_cast<bool>(fns_.hessian); }
  const FieldFunctions& functions() const { return fns_; }

  double eval(const Point& p) const;
  Vec3 gradient(const Point& p) const;
  /// Hessian in the orthonormal basis (b[0], b[1]) of T_p M.
  Mat2 hessian(const Point& p, const std::array<Vec3, 2>& b) const;
  /// Delta u - <grad u, grad V> from the closed form.
  double laplacian_nu(const Point& p) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  FieldFunctions fns_;
};

// Finite-difference derivatives of a closed-form function along geodesics.
Vec3 fd_gradient(const ModelSpace& m, const std::function<double(const Point&)>& f, const Point& p,
                 double h = 1e-3);
/// Second derivative of f along the geodesic through p with unit direction e.
double fd_second_directional(const ModelSpace& m, const std::function<double(const Point&)>& f,
                             const Point& p, const Vec3& e, double h = 1e-3);
Mat2 fd_hessian(const ModelSpace& m, const std::function<double(const Point&)>& f, const Point& p,
                const std::array<Vec3, 2>& b, double h = 1e-3);

/// grad of rho_c at p (unit tangent), and Hess(rho_c^2/2)(a, b) in closed form.
Vec3 distance_gradient(const ModelSpace& m, const Point& c, const Point& p);
double hessian_half_dist2(const ModelSpace& m, const Point& c, const Point& p, const Vec3& a, const Vec3& b);

/// Delta_nu u at p for a closed-form field.
double laplacian_nu(const ModelSpace& m, const ScalarField& u, const Point& p);

/// Laplacian of a radial profile u = f(rho_c): f'' + (psi'/psi) f' - <grad V, grad rho> f'.
double radial_laplacian_nu(const ModelSpace& m, const Point& c, const Point& p, double f1, double f2);

/// Conservative five-point discretisation of
///   Delta_nu u = e^V / psi [ d_rho(psi e^-V u_rho) + d_theta(psi^-1 e^-V u_theta) ]
/// on a geodesic polar grid. The pole closes through the zero-area inner face
/// of the first ring; the outer ring takes Dirichlet data through a ghost value.
class DiscreteLaplacian {
 public:
  explicit DiscreteLaplacian(GridPtr grid);

  const GeodesicBallGrid& grid() const { return *grid_; }
  /// Coefficients c such that (L u)_k = sum_nb c_nb (u_nb - u_k); the outer
  /// coefficient of the last ring couples to the boundary value g through the
  /// ghost 2g - u.
  struct Row {
    double in = 0.0, out = 0.0, left = 0.0, right = 0.0;
  };
  const Row& row(std::size_t k) const { return rows_[k]; }

  /// Operator at interior node k (i < n_r - 1).
  double apply(const std::vector<double>& u, std::size_t k) const;
  /// Operator at any node using boundary values g (one per angular index).
  double apply(const std::vector<double>& u, const std::vector<double>& g, std::size_t k) const;

 private:
  GridPtr grid_;
  std::vector<Row> rows_;
};

double laplacian_nu_discrete(const ScalarField& u, std::size_t k);

}  // namespace abplab
