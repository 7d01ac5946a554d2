#pragma once

#include "abplab/barrier.hpp"
#include "abplab/check_report.hpp"
#include "abplab/constants_ledger.hpp"
#include "abplab/scalar_field.hpp"

#include <functional>
#include <vector>

namespace abplab {

using PointFunction = std::function<double(const Point&)>;

/// Delta_nu u = f in B_radius(center), u = g on the boundary circle.
struct DirichletProblem {
  ModelSpace model = ModelSpace::euclidean();
  Point center;
  double radius = 1.0;
  int n_r = 64;
  int n_theta = 64;
  PointFunction f;
  PointFunction g;
};

struct PoissonSolution {
  ScalarField u;
  std::vector<double> f;         ///< rhs at the nodes
  std::vector<double> boundary;  ///< g per angular index
  double residual = 0.0;         ///< max |L u - f|
};

/// Five-point conservative scheme (see DiscreteLaplacian) solved with a
/// sparse LU factorisation.
PoissonSolution solve_poisson(const DirichletProblem& prob);

/// Data for the Harnack inequalities on B_{2R}: u on a polar grid of radius
/// 2R (closed form or grid values) and f at the nodes. The differential
/// relation is checked with the closed form when u has one, otherwise with
/// the discrete operator (outer ring only when boundary data are given).
struct HarnackInput {
  ScalarField u;
  std::vector<double> f;
  std::vector<double> boundary;
  double tol = 1e-6;  ///< relative tolerance for the nodewise differential relation
};

/// (avg_{B_{R/2}} u^{p0})^{1/p0} <= C0 { inf_{B_{R/2}} u + R^2 (avg_{B_{2R}} |f|^{N eta})^{1/(N eta)} }.
CheckReport harnack_check_sup(const HarnackInput& in, const ConstantsLedger& ledger);
/// sup_{B_{R/2}} u <= C1(p) { (avg_{B_R} (u^+)^p)^{1/p} + R^2-term }, p >= p0.
CheckReport harnack_check_sub(const HarnackInput& in, const ConstantsLedger& ledger, double p);
/// sup_{B_{R/2}} u <= C2 { inf_{B_{R/2}} u + R^2-term }.
CheckReport harnack_check_full(const HarnackInput& in, const ConstantsLedger& ledger);

/// Local growth lemma on B_r(x0) with the constants of B_{2R}, R = ledger R.
struct GrowthInstance {
  ModelSpace model = ModelSpace::euclidean();
  Point x0;
  double r = 1.0;
  FieldFunctions u;  ///< closed form with gradient and Hessian
  PointFunction f;
  int resolution = 128;
};

/// Conclusion nu[{u <= M} cap B_{r/18}] / nu[B_r] >= mu, plus the proof
/// pipeline on w = u + psi: contact-set location, the measure estimate for
/// w, and the lower bound for nu[A cap B_{r/18}].
Reports growth_check(const GrowthInstance& inst, const ConstantsLedger& ledger);

/// w = u + psi as a closed-form field (value, gradient, Hessian).
FieldFunctions barrier_shifted(const FieldFunctions& u, const BarrierSpec& s);

}  // namespace abplab
