// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when any criterion fails for a reason other than a
// check listed by is_known_statement_failure (those are statements that are
// false as written; the criterion still prints FAIL).

#include "abplab/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace abplab;

namespace {

struct Outcome {
  bool pass = true;
  bool unexpected = false;
  std::string detail;
};

Outcome judge(const SuiteOutput& s, double seconds, double budget) {
  Outcome o;
  int failed = 0, known = 0;
  for (const auto& r : s.reports) {
    if (r.pass) continue;
    ++failed;
    if (is_known_statement_failure(r)) {
      ++known;
    } else {
      o.unexpected = true;
    }
    std::printf("    failed: %s [%s] lhs=%.6g rhs=%.6g%s%s\n", r.name.c_str(), r.anchor.c_str(), r.lhs, r.rhs,
                r.notes.count("case") ? " case=" : "", r.notes.count("case") ? r.notes.at("case").c_str() : "");
    if (r.notes.count("rejected")) std::printf("      %s\n", r.notes.at("rejected").c_str());
  }
  if (seconds > budget) {
    o.unexpected = true;
    ++failed;
    std::printf("    runtime %.1fs over the %.0fs budget\n", seconds, budget);
  }
  o.pass = failed == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu checks, %d failed (%d statement-level), %.1fs", s.reports.size(), failed, known,
                seconds);
  o.detail = buf;
  return o;
}

std::string fingerprint(const SuiteOutput& s) {
  ExperimentConfig cfg;
  return suite_json(s, cfg).dump(2);
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240611;
  struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<SuiteOutput()> run;
    bool rerun;  // included in the determinism rerun
  };
  const std::vector<Criterion> criteria = {
      {1, "constants ledger", 1.0, [] { return criterion_constants(); }, true},
      {2, "ABP equality cases", 30.0, [] { return criterion_abp_equality(256); }, true},
      {3, "ABP inequality on random fields", 300.0, [&] { return criterion_abp_random(seed); }, false},
      {4, "Jacobi comparison", 120.0, [&] { return criterion_jacobi(seed); }, true},
      {5, "barrier and Ricci comparison", 120.0, [] { return criterion_barrier(); }, true},
      {6, "Harnack functional", 120.0, [&] { return criterion_hfun(seed); }, true},
      {7, "Harnack pipeline", 300.0, [&] { return criterion_harnack(seed); }, false},
      {8, "Pucci operators", 120.0, [&] { return criterion_pucci(seed); }, true},
      {9, "measure tools", 120.0, [&] { return criterion_measure(seed); }, true},
  };

  bool unexpected = false;
  std::vector<std::string> prints(criteria.size());
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOutput s;
    Outcome o;
    try {
      s = c.run();
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o = judge(s, dt, c.budget);
      prints[i] = fingerprint(s);
    } catch (const std::exception& e) {
      o.pass = false;
      o.unexpected = true;
      o.detail = std::string("exception: ") + e.what();
    }
    unexpected = unexpected || o.unexpected;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s criterion %d: %s (%s)", o.pass ? "PASS" : "FAIL", c.id, c.title,
                  o.detail.c_str());
    std::printf("%s\n", buf);
    std::fflush(stdout);
    lines.push_back(buf);
  }

  // Criterion 10: same seed, same bytes.
  {
    const auto t0 = std::chrono::steady_clock::now();
    int compared = 0, differing = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      if (!criteria[i].rerun || prints[i].empty()) continue;
      ++compared;
      if (fingerprint(criteria[i].run()) != prints[i]) {
        ++differing;
        std::printf("    differs: criterion %d\n", criteria[i].id);
      }
    }
    // File output through the bundle writer, twice.
    ExperimentConfig cfg;
    cfg.kind = "pucci";
    cfg.seed = seed;
    OutputBundle b2, b3;
    for (const auto& s : run_experiment(cfg)) add_suite_files(b2, s, cfg, "csv");
    for (const auto& s : run_experiment(cfg)) add_suite_files(b3, s, cfg, "csv");
    ++compared;
    if (b2.files != b3.files) ++differing;
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = differing == 0 && compared > 1;
    unexpected = unexpected || !pass;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s criterion 10: determinism (%d suites compared, %d differ, %.1fs)",
                  pass ? "PASS" : "FAIL", compared, differing, dt);
    std::printf("%s\n", buf);
    lines.push_back(buf);
  }

  std::printf("\nsummary\n");
  for (const auto& l : lines) std::printf("  %s\n", l.c_str());
  return unexpected ? 1 : 0;
}
