#include "abplab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace abplab {

namespace fs = std::filesystem;

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw Error(ErrorKind::Config, "expected a number, got " + j.dump());
}

Json to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["kind"] = to_string(r.kind);
  j["scale"] = r.scale;
  j["lhs"] = number_to_json(r.lhs);
  j["rhs"] = number_to_json(r.rhs);
  j["rel_tol"] = number_to_json(r.rel_tol);
  j["abs_tol"] = number_to_json(r.abs_tol);
  j["tolerance"] = number_to_json(r.tolerance());
  j["pass"] = r.pass;
  Json d = Json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = number_to_json(v);
  j["diagnostics"] = d;
  Json n = Json::object();
  for (const auto& [k, v] : r.notes) n[k] = v;
  j["notes"] = n;
  return j;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.kind = j.at("kind").get<std::string>() == "identity" ? CheckKind::Identity : CheckKind::Inequality;
  r.scale = j.value("scale", "linear");
  r.lhs = number_from_json(j.at("lhs"));
  r.rhs = number_from_json(j.at("rhs"));
  r.rel_tol = number_from_json(j.at("rel_tol"));
  r.abs_tol = number_from_json(j.at("abs_tol"));
  r.pass = j.at("pass").get<bool>();
  const Json diag = j.value("diagnostics", Json::object());
  for (const auto& [k, v] : diag.items()) r.diagnostics[k] = number_from_json(v);
  const Json notes = j.value("notes", Json::object());
  for (const auto& [k, v] : notes.items()) r.notes[k] = v.get<std::string>();
  return r;
}

Json to_json(const Reports& reports) {
  Json a = Json::array();
  for (const auto& r : reports) a.push_back(to_json(r));
  return a;
}

Json to_json(const ConstantsLedger& l) {
  Json j;
  j["K"] = number_to_json(l.params.K);
  j["N"] = number_to_json(l.params.N);
  j["R"] = number_to_json(l.params.R);
  j["omega"] = number_to_json(l.omega);
  j["doubling_R"] = number_to_json(l.doubling_R);
  j["doubling_2R"] = number_to_json(l.doubling_2R);
  j["doubling_4R"] = number_to_json(l.doubling_4R);
  j["log_doubling_R"] = number_to_json(l.log_doubling_R);
  j["log_doubling_2R"] = number_to_json(l.log_doubling_2R);
  j["log_doubling_4R"] = number_to_json(l.log_doubling_4R);
  j["eta"] = number_to_json(l.eta);
  j["alpha"] = number_to_json(l.alpha);
  j["M"] = number_to_json(l.big_m);
  j["log_M"] = number_to_json(l.log_big_m);
  j["mu"] = number_to_json(l.mu);
  j["log_mu"] = number_to_json(l.log_mu);
  j["delta0"] = number_to_json(l.delta0);
  j["p0"] = number_to_json(l.p0);
  j["log_p0"] = number_to_json(l.log_p0);
  j["p1"] = number_to_json(l.p1);
  j["log_p1"] = number_to_json(l.log_p1);
  j["log_C0"] = number_to_json(l.log_c0);
  j["log_C2"] = number_to_json(l.log_c2);
  j["loglog_C2"] = number_to_json(l.loglog_c2);
  j["log_C3"] = number_to_json(l.log_c3);
  return j;
}

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "csv: bad number '" + s + "'");
  }
  require(used == s.size(), ErrorKind::Config, "csv: bad number '" + s + "'");
  return v;
}

}  // namespace

std::string to_csv(const Reports& reports) {
  require(!reports.empty(), ErrorKind::InvalidArgument, "to_csv: no reports");
  std::ostringstream os;
  os << "name,anchor,lhs,rhs,tol,pass,kind\n";
  for (const auto& r : reports)
    os << csv_field(r.name) << ',' << csv_field(r.anchor) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
       << fmt(r.tolerance()) << ',' << (r.pass ? "true" : "false") << ',' << to_string(r.kind) << '\n';
  return os.str();
}

bool CsvRow::recompute() const {
  CheckReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_tol = tol;
  r.kind = kind == "identity" ? CheckKind::Identity : CheckKind::Inequality;
  return r.recompute();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), ErrorKind::Config, "csv: empty input");
  require(line == "name,anchor,lhs,rhs,tol,pass,kind", ErrorKind::Config, "csv: unexpected header");
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    require(f.size() == 7, ErrorKind::Config, "csv: expected 7 fields");
    CsvRow r;
    r.name = f[0];
    r.anchor = f[1];
    r.lhs = parse_double(f[2]);
    r.rhs = parse_double(f[3]);
    r.tol = parse_double(f[4]);
    require(f[5] == "true" || f[5] == "false", ErrorKind::Config, "csv: bad pass flag");
    r.pass = f[5] == "true";
    r.kind = f[6];
    rows.push_back(r);
  }
  return rows;
}

std::string to_plotdata(const Series& s) {
  require(s.x.size() == s.y.size(), ErrorKind::InvalidArgument, "plotdata: x and y differ in length");
  require(!s.x.empty(), ErrorKind::InvalidArgument, "plotdata: empty series");
  std::ostringstream os;
  os << "# " << s.name << '\n';
  for (std::size_t i = 0; i < s.x.size(); ++i) os << fmt(s.x[i]) << ' ' << fmt(s.y[i]) << '\n';
  return os.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    require(static_cast<bool>(f), ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move " + tmp.string() + " to " + path.string());
  }
}

void OutputBundle::write(const fs::path& dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec && fs::is_directory(dir), ErrorKind::Io, "cannot create output directory " + dir.string());
  for (const auto& [name, content] : files) write_atomic(dir / name, content);
}

}  // namespace abplab
