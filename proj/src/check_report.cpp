#include "abplab/check_report.hpp"

#include <cmath>
#include <limits>

namespace abplab {

double CheckReport::tolerance() const { return rel_tol * std::abs(rhs) + abs_tol; }

bool CheckReport::recompute() const {
  if (std::isnan(lhs) || std::isnan(rhs)) return false;
  if (kind == CheckKind::Identity) {
    if (lhs == rhs) return true;  // covers matching infinities
    return std::abs(lhs - rhs) <= tolerance();
  }
  if (lhs <= rhs) return true;
  return lhs <= rhs + tolerance();
}

CheckReport inequality(std::string name, std::string anchor, double lhs, double rhs, double rel_tol,
                       double abs_tol) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_tol = rel_tol;
  r.abs_tol = abs_tol;
  r.kind = CheckKind::Inequality;
  r.pass = r.recompute();
  return r;
}

CheckReport identity(std::string name, std::string anchor, double lhs, double rhs, double rel_tol,
                     double abs_tol) {
  CheckReport r = inequality(std::move(name), std::move(anchor), lhs, rhs, rel_tol, abs_tol);
  r.kind = CheckKind::Identity;
  r.pass = r.recompute();
  return r;
}

CheckReport rejected(std::string name, std::string anchor, const std::string& reason) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.lhs = std::numeric_limits<double>::quiet_NaN();
  r.rhs = std::numeric_limits<double>::quiet_NaN();
  r.pass = false;
  r.notes["rejected"] = reason;
  return r;
}

bool all_pass(const Reports& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

void append(Reports& into, const Reports& more) { into.insert(into.end(), more.begin(), more.end()); }

const char* to_string(CheckKind kind) { return kind == CheckKind::Identity ? "identity" : "inequality"; }

}  // namespace abplab
