#include "abplab/polar_grid.hpp"

#include <cmath>

namespace abplab {

namespace {

// 3-point Gauss-Legendre nodes/weights on [-1/2, 1/2].
constexpr double kGlX[3] = {-0.3872983346207417, 0.0, 0.3872983346207417};
constexpr double kGlW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

using Poly = std::vector<Vec2>;

Poly clip_half_plane(const Poly& in, double c0, double a, double b) {
  Poly out;
  const std::size_t n = in.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& p = in[k];
    const Vec2& q = in[(k + 1) % n];
    const double fp = c0 + a * p[0] + b * p[1];
    const double fq = c0 + a * q[0] + b * q[1];
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double s = fp / (fp - fq);
      out.push_back(p + s * (q - p));
    }
  }
  return out;
}

}  // namespace

GeodesicBallGrid::GeodesicBallGrid(const ModelSpace& m, const Point& center, double radius, int n_r,
                                   int n_theta)
    : model_(m), center_(center), radius_(radius), n_r_(n_r), n_theta_(n_theta) {
  require(n_r >= 8 && n_theta >= 8, ErrorKind::Resolution, "polar grid resolution below 8");
  require(radius > 0.0, ErrorKind::InvalidArgument, "polar grid radius must be positive");
  require(radius < m.cut_radius(), ErrorKind::CutLocus, "polar grid radius beyond the cut radius");
  dr_ = radius / n_r;
  dtheta_ = 2.0 * kPi / n_theta;
  frame_ = m.tangent_frame(center);

  const double s = std::sqrt(m.k());
  nodes_.resize(static_cast<std::size_t>(n_r) * n_theta);
  weights_.resize(nodes_.size());
  for (int i = 0; i < n_r; ++i) {
    const double rho = (i + 0.5) * dr_;
    for (int j = 0; j < n_theta; ++j) {
      const double th = j * dtheta_;
      GridNode& nd = nodes_[index(i, j)];
      nd.i = i;
      nd.j = j;
      nd.rho = rho;
      nd.theta = th;
      const Vec3 u = direction(th);
      nd.point = geodesic_point(m, center, u, rho);
      switch (m.kind()) {
        case ModelKind::Sphere:
          nd.e_rho = -s * std::sin(s * rho) * center.coords + std::cos(s * rho) * u;
          break;
        case ModelKind::Hyperbolic:
          nd.e_rho = s * std::sinh(s * rho) * center.coords + std::cosh(s * rho) * u;
          break;
        default: nd.e_rho = u;
      }
      nd.e_theta = -std::sin(th) * frame_[0] + std::cos(th) * frame_[1];

      double w = 0.0;
      for (int g = 0; g < 3; ++g) w += kGlW[g] * density(rho + kGlX[g] * dr_, th);
      weights_[index(i, j)] = w * dr_ * dtheta_;
    }
  }
}

int GeodesicBallGrid::index(int i, int j) const {
  j %= n_theta_;
  if (j < 0) j += n_theta_;
  return i * n_theta_ + j;
}

Vec3 GeodesicBallGrid::direction(double theta) const {
  return std::cos(theta) * frame_[0] + std::sin(theta) * frame_[1];
}

Point GeodesicBallGrid::point_at(double rho, double theta) const {
  return geodesic_point(model_, center_, direction(theta), rho);
}

double GeodesicBallGrid::density(double rho, double theta) const {
  double d = model_.polar_psi(rho);
  if (model_.has_weight()) d *= std::exp(-model_.potential(point_at(rho, theta)));
  return d;
}

double GeodesicBallGrid::total_measure() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double GeodesicBallGrid::integrate(const std::vector<double>& f) const {
  require(f.size() == weights_.size(), ErrorKind::InvalidArgument, "integrate: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * weights_[k];
  return s;
}

double GeodesicBallGrid::measure_within(double r_sub) const {
  double s = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (nodes_[k].rho < r_sub) s += weights_[k];
  return s;
}

double GeodesicBallGrid::average(const std::vector<double>& f, double r_sub) const {
  require(f.size() == weights_.size(), ErrorKind::InvalidArgument, "average: size mismatch");
  double s = 0.0, m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (nodes_[k].rho >= r_sub) continue;
    s += f[k] * weights_[k];
    m += weights_[k];
  }
  require(m > 0.0, ErrorKind::Resolution, "average: sub-ball contains no grid nodes");
  return s / m;
}

double GeodesicBallGrid::clipped_cell_measure(int i, int j, double phi0, double g_rho, double g_theta) const {
  const double hr = 0.5 * dr_, ht = 0.5 * dtheta_;
  const double a = g_rho, b = g_theta;
  // Corner test first: full and empty cells are the common case.
  double fmax = -kInf, fmin = kInf;
  for (int sr : {-1, 1})
    for (int st : {-1, 1}) {
      const double f = phi0 + a * sr * hr + b * st * ht;
      fmax = std::max(fmax, f);
      fmin = std::min(fmin, f);
    }
  if (fmax <= 0.0) return weights_[index(i, j)];
  if (fmin >= 0.0) return 0.0;

  const Poly square = {Vec2(-hr, -ht), Vec2(hr, -ht), Vec2(hr, ht), Vec2(-hr, ht)};
  const Poly poly = clip_half_plane(square, phi0, a, b);
  if (poly.size() < 3) return 0.0;

  const double rho0 = (i + 0.5) * dr_;
  const double th0 = j * dtheta_;
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    const Vec2& p0 = poly[0];
    const Vec2& p1 = poly[k];
    const Vec2& p2 = poly[k + 1];
    const double area = 0.5 * std::abs((p1 - p0)[0] * (p2 - p0)[1] - (p1 - p0)[1] * (p2 - p0)[0]);
    if (area == 0.0) continue;
    // Edge-midpoint rule, exact for quadratics.
    const Vec2 q[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    double s = 0.0;
    for (const Vec2& x : q) s += density(rho0 + x[0], th0 + x[1]);
    total += area * s / 3.0;
  }
  return total;
}

GeodesicBallGrid build_polar_grid(const ModelSpace& m, const Point& center, double r, int n_r, int n_theta) {
  return GeodesicBallGrid(m, center, r, n_r, n_theta);
}

}  // namespace abplab
