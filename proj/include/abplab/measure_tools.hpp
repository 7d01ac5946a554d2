#pragma once

#include "abplab/check_report.hpp"
#include "abplab/constants_ledger.hpp"
#include "abplab/scalar_field.hpp"

#include <vector>

namespace abplab {

/// nu[B_r1]/nu[B_r2] <= D_{K,N,R} (r1/r2)^{N eta} with eta = log2(D_{K,N,R})/N,
/// the doubling ratio nu[B_2s]/nu[B_s] <= D_{K,N,R} for sampled s <= R/2,
/// and the intermediate cosh bound for the same ratios.
Reports doubling_check(const ModelSpace& m, const CurvatureParams& params, const Point& center, double r1,
                       double r2);

/// r^2 (avg_{B_r} |f|^{Nq})^{1/(Nq)} with r = r_sub (defaults to the grid radius).
double integral_I(const ScalarField& f, double N, double q, double r_sub = -1.0);

/// Distribution bracketing with the upper tail lambda(t) = nu[{f > t}]/nu[Omega]:
///   (1 - C^-p) S + C^-p lambda(1) <= avg f^p <= 1 + (C^p - 1) S,
///   S = sum_{k >= 0} C^{pk} lambda(C^k).
Reports lp_distribution_check(const std::vector<double>& f, const std::vector<double>& weights, double C, double p);

struct Ball {
  Point center;
  double radius = 0.0;
};

struct BallFamily {
  ModelSpace model = ModelSpace::euclidean();
  std::vector<Ball> balls;
};

/// Greedy selection by decreasing radius (ties by index): a ball is kept when
/// its quarter ball misses every quarter ball kept so far.
std::vector<std::size_t> vitali_cover(const BallFamily& fam);

/// Pairwise disjointness of selected quarter balls, coverage of every centre
/// by a selected ball, and the radius-ordering witness for unselected balls.
Reports verify_vitali(const BallFamily& fam, const std::vector<std::size_t>& selected);

}  // namespace abplab
