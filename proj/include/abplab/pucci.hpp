#pragma once

#include "abplab/check_report.hpp"
#include "abplab/constants_ledger.hpp"
#include "abplab/model_space.hpp"
#include "abplab/rng.hpp"

namespace abplab {

struct PucciValues {
  double m_minus = 0.0;
  double m_plus = 0.0;
};

/// M- = sum_{l >= 0} l + theta sum_{l < 0} l,  M+ = sum_{l < 0} l + theta sum_{l >= 0} l.
PucciValues pucci(const Mat2& H, double theta);

/// sup over rho(x, y) <= r of M+[Hess(rho_y^2/2)] - tr Hess(rho_y^2/2).
double e_theta(const ModelSpace& m, double r, double theta);

/// Bounds i) and ii) of the error estimate lemma for E_theta(2R) on a model
/// space (Ricci and sectional lower bounds read off the model).
Reports e_theta_bounds(const ModelSpace& m, double R, double theta);

/// tr Hu <= M-(Hu) + a (M+(Hd) - tr Hd) given the contact condition Hu + a Hd >= 0.
CheckReport pucci_contact_bound(const Mat2& u_hessian, const Mat2& dist_hessian, double a, double theta);

/// Random symmetric matrices: duality, theta = 1 collapse, monotonicity,
/// sub/superadditivity and M- <= tr <= M+.
Reports pucci_algebra_check(CounterRng rng, int samples, double theta);

/// inf/sup of tr(A H) over I <= A <= theta I: random A stay inside
/// [M-, M+] and the eigenbasis-diagonal A attain both ends.
Reports pucci_extremal_check(CounterRng rng, int n_h, int n_a, double theta);

/// Random contact-conditioned pairs for pucci_contact_bound.
Reports pucci_contact_suite(CounterRng rng, int samples, double theta);

/// Curvature parameters with sqrt(K) R replaced by sqrt(K) R + E.
CurvatureParams pucci_params(const CurvatureParams& params, double e_theta_2r);

}  // namespace abplab
