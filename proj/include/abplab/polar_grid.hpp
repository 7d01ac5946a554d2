#pragma once

#include "abplab/model_space.hpp"

#include <array>
#include <vector>

namespace abplab {

struct GridNode {
  Point point;
  int i = 0;  ///< radial index
  int j = 0;  ///< angular index
  double rho = 0.0;
  double theta = 0.0;
  Vec3 e_rho = Vec3::Zero();    ///< unit radial tangent at the node
  Vec3 e_theta = Vec3::Zero();  ///< unit angular tangent at the node
};

/// Geodesic polar grid on B_r(center). Nodes are cell centred:
/// rho_i = (i + 1/2) h, theta_j = 2 pi j / n_theta.
class GeodesicBallGrid {
 public:
  GeodesicBallGrid(const ModelSpace& m, const Point& center, double radius, int n_r, int n_theta);

  const ModelSpace& model() const { return model_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  double dr() const { return dr_; }
  double dtheta() const { return dtheta_; }
  std::size_t size() const { return nodes_.size(); }

  int index(int i, int j) const;
  const GridNode& node(int i, int j) const { return nodes_[index(i, j)]; }
  const GridNode& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t k) const { return weights_[k]; }

  /// Unit direction of the ray with angle theta, in T_center M.
  Vec3 direction(double theta) const;
  Point point_at(double rho, double theta) const;
  double psi(double rho) const { return model_.polar_psi(rho); }

  double total_measure() const;
  double integrate(const std::vector<double>& f) const;
  /// nu-average of f over nodes with rho < r_sub (all nodes when r_sub >= radius).
  double average(const std::vector<double>& f, double r_sub) const;
  double measure_within(double r_sub) const;

  /// nu-measure of {phi <= 0} inside cell (i, j), with phi linear in the polar
  /// coordinates: phi = phi0 + g_rho (rho - rho_i) + g_theta (theta - theta_j).
  double clipped_cell_measure(int i, int j, double phi0, double g_rho, double g_theta) const;

 private:
  double density(double rho, double theta) const;

  ModelSpace model_;
  Point center_;
  double radius_;
  int n_r_, n_theta_;
  double dr_, dtheta_;
  std::array<Vec3, 2> frame_;
  std::vector<GridNode> nodes_;
  std::vector<double> weights_;
};

GeodesicBallGrid build_polar_grid(const ModelSpace& m, const Point& center, double r, int n_r, int n_theta);

}  // namespace abplab
