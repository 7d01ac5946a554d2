#pragma once

#include "abplab/check_report.hpp"
#include "abplab/common.hpp"
#include "abplab/constants_ledger.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace abplab {

using Json = nlohmann::ordered_json;

/// Doubles go out as numbers when finite and as "nan", "inf", "-inf" otherwise.
Json number_to_json(double x);
double number_from_json(const Json& j);

Json to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);
Json to_json(const Reports& reports);
Json to_json(const ConstantsLedger& ledger);

/// Header: name,anchor,lhs,rhs,tol,pass,kind. Numbers use 17 significant digits.
std::string to_csv(const Reports& reports);

struct CsvRow {
  std::string name, anchor, kind;
  double lhs = 0.0, rhs = 0.0, tol = 0.0;
  bool pass = false;

  /// Verdict re-derived from lhs, rhs and tol.
  bool recompute() const;
};
std::vector<CsvRow> parse_csv(const std::string& text);

struct Series {
  std::string name;
  std::vector<double> x, y;
};

/// Two whitespace-separated columns, one (x, y) pair per line.
std::string to_plotdata(const Series& s);

/// Writes through a temporary file in the same directory and renames it over
/// the target. Throws Error(Io) on failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// A batch of files written only after every one of them has been rendered.
struct OutputBundle {
  std::vector<std::pair<std::string, std::string>> files;  ///< (relative name, content)
  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
  void write(const std::filesystem::path& dir) const;
};

}  // namespace abplab
