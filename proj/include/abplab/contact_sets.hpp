#pragma once

#include "abplab/check_report.hpp"
#include "abplab/scalar_field.hpp"

#include <vector>

namespace abplab {

struct ContactPair {
  std::size_t x_index = 0;  ///< node of the domain grid
  Point x;
  std::size_t y_index = 0;  ///< position in the vertex list
  Point y;
  double a = 0.0;
  double c = 0.0;          ///< paraboloid level: P = -(a/2) rho^2(., y) + c touches u at x
  double min_value = 0.0;  ///< min over the grid of u + (a/2) rho^2(., y)
};

/// A(a, E / Omega, u) with the paraboloid convention u + (a/2) rho^2(., y).
struct ContactSet {
  double a = 0.0;
  std::vector<Point> vertices;
  std::vector<ContactPair> pairs;  ///< sorted by vertex, then by node

  /// Distinct contact nodes in increasing order.
  std::vector<std::size_t> contact_nodes() const;
  /// True when every vertex has at least one contact pair.
  bool covers_all_vertices() const;
  /// True when some contact node sits on the outermost ring of the grid.
  bool touches_boundary(const GeodesicBallGrid& grid) const;
};

/// Minimiser search for a single vertex. Uses a block branch-and-bound over
/// the grid with triangle-inequality lower bounds; the result equals the
/// exhaustive minimum, ties within tie_tol * max(1, |min|) all retained.
class ContactSearch {
 public:
  ContactSearch(const ScalarField& u, double a, int block = 16);

  struct Result {
    double min_value = 0.0;
    std::vector<std::size_t> argmin;
  };
  Result minimise(const Point& y, double tie_tol = 1e-12) const;
  /// Grid minimum of u + (a/2) rho^2(., y) only.
  double min_value(const Point& y) const;

  double a() const { return a_; }
  const ScalarField& field() const { return u_; }

 private:
  struct Block {
    std::size_t rep = 0;
    double radius = 0.0;
    double min_u = 0.0;
    std::vector<std::size_t> members;
  };
  const ScalarField& u_;
  double a_;
  std::vector<Block> blocks_;
};

ContactSet compute_contact_set(const ScalarField& u, double a, const std::vector<Point>& E, double tie_tol = 1e-12);

/// Exhaustive reference implementation (no pruning), used as a test oracle.
ContactSet compute_contact_set_bruteforce(const ScalarField& u, double a, const std::vector<Point>& E,
                                          double tie_tol = 1e-12);

/// |grad u(x) - a log_x(y)|, i.e. |grad u + a rho grad rho_y| at x.
double gradient_contact_residual(const ContactPair& pair, const ScalarField& u);

/// Nodes of a polar grid on the closed ball B_s(c) plus its centre; used as
/// vertex sets E.
std::vector<Point> ball_vertices(const ModelSpace& m, const Point& c, double s, int n_r, int n_theta);

/// Contact location lemma on the grid of u (centred at x0 with radius r).
/// The premise "u >= t" is read on the annulus B_r(x0) minus B_{5r/6}(x0),
/// which is where the proof uses it.
Reports check_contact_location(const ScalarField& u, double a, const Point& y0, double l, double t);

}  // namespace abplab
