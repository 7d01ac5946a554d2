#pragma once

#include <map>
#include <string>
#include <vector>

namespace abplab {

enum class CheckKind { Inequality, Identity };

/// One verified inequality or identity.
///   inequality: pass <=> lhs <= rhs + rel_tol * |rhs| + abs_tol
///   identity:   pass <=> |lhs - rhs| <= rel_tol * |rhs| + abs_tol
/// `scale` is "linear" or "log" (both sides are logarithms of the quantities).
struct CheckReport {
  std::string name;
  std::string anchor;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  CheckKind kind = CheckKind::Inequality;
  std::string scale = "linear";
  bool pass = false;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::string> notes;

  /// Re-derives the verdict from the stored fields.
  bool recompute() const;
  double tolerance() const;
};

CheckReport inequality(std::string name, std::string anchor, double lhs, double rhs, double rel_tol = 0.0,
                       double abs_tol = 0.0);
CheckReport identity(std::string name, std::string anchor, double lhs, double rhs, double rel_tol = 0.0,
                     double abs_tol = 0.0);
/// A report that failed before both sides could be evaluated (hypothesis
/// violations, numerical errors); lhs/rhs are NaN and pass is false.
CheckReport rejected(std::string name, std::string anchor, const std::string& reason);

using Reports = std::vector<CheckReport>;

bool all_pass(const Reports& reports);
void append(Reports& into, const Reports& more);

const char* to_string(CheckKind kind);

}  // namespace abplab
