#pragma once

#include "abplab/check_report.hpp"
#include "abplab/model_space.hpp"
#include "abplab/rng.hpp"

#include <vector>

namespace abplab {

/// Poisson kernel of the unit disc, (1 - |x|^2) / |x - e^{i omega}|^2.
double poisson_kernel_disc(const Vec2& x, double omega);

/// phi = sqrt(k) d / sqrt(2); throws unless phi < 1 (chart validity).
double hfun_phi(const ModelSpace& m, double d);

/// 9, (1 + 2 cos phi)^2 or (1 + 2 cosh phi)^2.
double hfun_closed_form(const ModelSpace& m, double d);

/// Chart radius of B_{d/2} over chart radius of B_d.
double theta_ratio(const ModelSpace& m, double d);

struct ExpansionFit {
  std::vector<double> coeffs;  ///< a0, a1, ... in powers of d
  double residual = 0.0;       ///< max abs residual over the samples
  double condition = 0.0;      ///< of the scaled design matrix
};

struct HfunResult {
  ModelKind model = ModelKind::Euclidean;
  double k = 0.0;
  double d = 0.0;
  double value_closed = 0.0;
  double value_numeric = 0.0;
  double theta_used = 0.0;   ///< from the radial chart integral, not from theta_ratio
  int n_boundary = 0;
  int n_ball = 0;
};

/// Chart radius s(rho) of the geodesic circle of radius rho in the conformal
/// chart sigma = sqrt(2) / (1 + k |z|^2), by quadrature and a bracketed root solve.
double chart_radius(const ModelSpace& m, double rho);

/// Maximises max/min of the Poisson kernel over the chart image of B_{d/2},
/// boundary point masses on an omega grid of n_boundary points, the ball on
/// n_ball angles per ring.
HfunResult hfun_numeric(const ModelSpace& m, double d, int n_boundary = 512, int n_ball = 512);

/// Least squares in powers of d (degree 3 or 4), columns scaled to unit norm.
ExpansionFit expansion_fit(const std::vector<double>& d, const std::vector<double>& values, int degree = 3);

/// Poisson averages of random boundary mixtures (up to max_atoms atoms)
/// never beat the point-mass value.
CheckReport point_mass_domination(const ModelSpace& m, double d, CounterRng rng, int n_mixtures = 100,
                                  int max_atoms = 8, int n_boundary = 512, int n_ball = 512);

/// Closed form vs numeric, theta identity, expansion and evenness checks.
Reports hfun_checks(const ModelSpace& m, double d, CounterRng rng);

}  // namespace abplab
