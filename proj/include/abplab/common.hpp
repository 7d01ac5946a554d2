#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace abplab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorKind {
  InvalidArgument,
  CutLocus,
  Resolution,
  MissingClosedForm,
  Hypothesis,
  Divergence,
  Convergence,
  NonPositiveDeterminant,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers (and the CLI
/// exit-code mapping) distinguish precondition failures from numerical ones.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace abplab
