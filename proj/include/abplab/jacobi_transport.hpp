#pragma once

#include "abplab/check_report.hpp"
#include "abplab/model_space.hpp"
#include "abplab/rng.hpp"

#include <functional>
#include <vector>

namespace abplab {

/// Jacobi matrices along t -> exp_x(t v), t in [0, 1], expressed in the
/// parallel frame (v/|v|, normal). On the 2-D models this frame is carried by
/// the rotation of the geodesic plane, so R(t) is constant.
struct JacobiState {
  Point base;
  TangentVector direction;
  double speed = 0.0;
  double curvature = 0.0;
  std::array<Vec3, 2> frame;  ///< (unit direction, normal) at the base point
  std::vector<double> times;
  std::vector<Mat2> J;
  std::vector<Mat2> Jdot;
  std::vector<double> weight_ratio;  ///< e^{-V(gamma(t))} / e^{-V(x)}
  double wronskian_drift = 0.0;      ///< max |W(t) - W(0)|, W = J^T Jdot - Jdot^T J

  double det(std::size_t i) const { return J[i].determinant(); }
};

Point geodesic_position(const ModelSpace& m, const JacobiState& s, double t);
Vec3 geodesic_velocity(const ModelSpace& m, const JacobiState& s, double t);

/// R = curvature * |v|^2 * (projection orthogonal to v) in the frame (v, normal).
Mat2 curvature_matrix(const ModelSpace& m, double speed);

/// initial_hessian is Hess u(x) in the basis m.tangent_frame(x).
JacobiState integrate_jacobi(const ModelSpace& m, const Point& x, const Mat2& initial_hessian,
                             const TangentVector& v, int n_steps = 256);

/// Constant-coefficient RK4 for Y'' + R(t) Y = 0 on [0, 1].
void integrate_matrix_ode(const std::function<Mat2(double)>& R, const Mat2& Y0, const Mat2& Z0, int n_steps,
                          std::vector<Mat2>& Y, std::vector<Mat2>& Z);

/// (w det J)^{1/N} for finite N, log(w det J) for N = infinity.
std::vector<double> dn_functional(const JacobiState& s, double N);

/// Second-difference check of D'' <= -(1/N) Ric_{N,nu}(gamma') D (or
/// D'' <= -Ric_inf for N = infinity), plus the K-uniform form
/// D'' <= 4 (K/N) r^2 D with r = |v| / 2.
Reports verify_comparison(const JacobiState& s, const ModelSpace& m, double N, double K);

/// Structure of S(t) = [J01]^{-1} J10 and the criterion
/// (Jdot(0) + S(1) >= 0) <=> det J > 0 on [0, 1), tested on random Jdot(0).
Reports verify_ode_structure(const std::function<Mat2(double)>& R, int n_steps, CounterRng rng,
                             int n_random = 200);

}  // namespace abplab
