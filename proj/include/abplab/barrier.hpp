#pragma once

#include "abplab/check_report.hpp"
#include "abplab/constants_ledger.hpp"
#include "abplab/model_space.hpp"

namespace abplab {

/// h(t) = beta0 + beta1 t^2 + beta2 t^3 on [0, 1/18], 18^alpha - t^{-alpha}
/// beyond; psi = h(rho(x0, .) / r) on the ball B_r(x0).
struct BarrierSpec {
  double alpha = 2.0;
  double beta0 = 0.0, beta1 = 0.0, beta2 = 0.0;
  double junction = 1.0 / 18.0;
  ModelSpace model = ModelSpace::euclidean();
  Point center;
  double r = 1.0;
};

BarrierSpec make_barrier(const ModelSpace& m, const Point& center, double r, double alpha);
/// alpha = N H(omega R) from the curvature parameters.
BarrierSpec make_barrier(const ModelSpace& m, const Point& center, double r, const CurvatureParams& params);

double barrier_h(const BarrierSpec& s, double t);
double barrier_dh(const BarrierSpec& s, double t);
double barrier_d2h(const BarrierSpec& s, double t);

/// Values of the cubic and the tail and their first two derivatives at the
/// junction, as |left - right|. The *_scale fields hold the largest term
/// entering each difference; the values cancel to zero at the junction, so
/// residuals are only meaningful relative to these.
struct JunctionResidual {
  double value = 0.0, first = 0.0, second = 0.0;
  double value_scale = 0.0, first_scale = 0.0, second_scale = 0.0;
};
JunctionResidual junction_residual(const BarrierSpec& s);

double barrier_psi(const BarrierSpec& s, const Point& p);
/// Delta_nu psi at p from the radial closed form.
double barrier_laplacian(const BarrierSpec& s, const Point& p);

/// Lemma checks on a dense radial sample: infimum of h, derivative bounds,
/// the Laplacian bound on the closed ball B_{r/18} (as stated and in the
/// form reached by its proof) and the sign outside it.
Reports verify_barrier(const BarrierSpec& s, const CurvatureParams& params);

/// Delta_nu rho_y <= (N-1) H(omega_{K,N-1} rho) / rho and
/// Delta_nu (rho_y^2 / 2) <= N H(omega_{K,N} rho) on B_{sample_radius}(y).
Reports check_ricci_comparison(const ModelSpace& m, const CurvatureParams& params, const Point& y,
                               double sample_radius);

}  // namespace abplab
