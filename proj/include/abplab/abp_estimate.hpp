#pragma once

#include "abplab/check_report.hpp"
#include "abplab/contact_sets.hpp"
#include "abplab/constants_ledger.hpp"

#include <vector>

namespace abplab {

/// S(r omega)[H(r omega) + lap/(N a)] for finite N; 2 r^2 K + lap / a for N = inf.
double d_bound(double K, double N, double r, double a, double lap_nu_u);

/// Contact-set measure data on a grid, from the transport map
/// x -> y(x) = exp_x(grad u(x) / a). A node counts as a contact node when its
/// paraboloid of vertex y(x) touches u there globally (checked against every
/// search in `searches`). Each contact cell contributes the nu-measure of
/// its part mapped into E = closed ball B_s(c_E), using a linear level set
/// of rho(y(x), c_E) - s inside the cell.
struct TransportMeasure {
  std::vector<double> cell_measure;  ///< 0 for non-contact nodes
  std::vector<char> contact;
  std::vector<Point> image;          ///< y(x)
  std::vector<char> image_valid;     ///< false when |grad u / a| exceeds the cut radius
  std::size_t candidates = 0;        ///< nodes whose cell meets the preimage of E
  std::size_t rejected = 0;          ///< candidates failing the global touching test
};

TransportMeasure transport_measure(const ScalarField& u, double a, const Point& e_center, double e_radius,
                                   const std::vector<const ContactSearch*>& searches, double touch_tol = 1e-10);

/// nu-measure of {x : rho(x, c) <= s} on the grid by the same cut-cell rule.
std::vector<double> ball_cell_measure(const GeodesicBallGrid& g, const Point& c, double s);

struct AbpInstance {
  ScalarField u;  ///< closed form on the polar grid of B_r
  double a = 1.0;
  double K = 0.0;
  double N = 2.0;
  Point e_center;
  double e_radius = 0.1;
  double rel_tol = 1e-6;
  double quad_tol = 0.0;  ///< absolute slack on the lhs, in units of measure
};

struct AbpResult {
  CheckReport report;
  double lhs = 0.0;            ///< nu[E]
  double rhs = 0.0;            ///< integral over A of D^N (or exp D)
  double rhs_nodes = 0.0;      ///< same integral with whole-cell node weights
  double nu_e_exact = 0.0;     ///< closed-form nu[E] when available, else NaN
  std::size_t contact_nodes = 0;
  std::size_t anomalies = 0;   ///< contact nodes with D < -1e-3
  double min_d = 0.0;
};

AbpResult abp_check(const AbpInstance& inst);

}  // namespace abplab
