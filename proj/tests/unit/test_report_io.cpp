#include "abplab/experiments.hpp"
#include "abplab/report_io.hpp"

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace abplab;
namespace fs = std::filesystem;

TEST_CASE("report verdicts") {
  CHECK(inequality("a", "x", 1.0, 2.0).pass);
  CHECK_FALSE(inequality("a", "x", 2.0, 1.0).pass);
  CHECK(inequality("a", "x", 1.0 + 1e-9, 1.0, 1e-8).pass);
  CHECK(identity("b", "x", 1.0, 1.0 + 1e-13, 0.0, 1e-12).pass);
  CHECK_FALSE(identity("b", "x", 1.0, 1.1, 0.01).pass);
  const auto r = rejected("c", "x", "premise failed");
  CHECK_FALSE(r.pass);
  CHECK(std::isnan(r.lhs));
}

TEST_CASE("JSON round trip keeps non-finite numbers") {
  Reports reps = {inequality("x", "a", 1.5, kInf), identity("y", "b", 0.25, 0.25, 1e-9), rejected("z", "c", "no")};
  reps[0].diagnostics["big"] = 1e300;
  reps[0].notes["case"] = "sphere";
  for (const auto& r : reps) {
    const Json j = to_json(r);
    const CheckReport back = report_from_json(Json::parse(j.dump()));
    CHECK(back.name == r.name);
    CHECK(back.pass == r.pass);
    CHECK(back.kind == r.kind);
    if (std::isnan(r.lhs)) CHECK(std::isnan(back.lhs));
    else CHECK(back.lhs == r.lhs);
    CHECK(back.diagnostics == r.diagnostics);
    CHECK(back.notes == r.notes);
  }
  CHECK(number_to_json(-kInf) == "-inf");
  CHECK(std::isinf(number_from_json(Json("inf"))));
}

TEST_CASE("CSV round trip re-derives every verdict") {
  Reports reps;
  CounterRng rng(12);
  for (int i = 0; i < 50; ++i) {
    const double l = rng.uniform(-1, 1), r = rng.uniform(-1, 1);
    reps.push_back(i % 2 ? inequality("ineq " + std::to_string(i), "a,b", l, r, 1e-3)
                         : identity("id \"q\" " + std::to_string(i), "c", l, l * (1 + rng.uniform(-1e-3, 1e-3)), 5e-4));
  }
  const auto rows = parse_csv(to_csv(reps));
  REQUIRE(rows.size() == reps.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].name == reps[i].name);
    CHECK(rows[i].anchor == reps[i].anchor);
    CHECK(rows[i].lhs == reps[i].lhs);
    CHECK(rows[i].rhs == reps[i].rhs);
    CHECK(rows[i].pass == reps[i].pass);
    CHECK(rows[i].recompute() == rows[i].pass);
  }
  CHECK_THROWS_AS(to_csv({}), Error);
  CHECK(to_csv(reps).rfind("name,anchor,lhs,rhs,tol,pass,kind\n", 0) == 0);
}

TEST_CASE("plot data") {
  const Series s{"h", {0.1, 0.2}, {9.0, 8.5}};
  std::istringstream in(to_plotdata(s));
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("#", 0) == 0);
  double x, y;
  in >> x >> y;
  CHECK(x == 0.1);
  CHECK(y == 9.0);
  in >> x >> y;
  CHECK(y == 8.5);
}

TEST_CASE("bundle writes every file or none") {
  const fs::path dir = fs::temp_directory_path() / "abplab_bundle_test";
  fs::remove_all(dir);
  OutputBundle b;
  b.add("a.json", "{}\n");
  b.add("b.csv", "x\n");
  b.write(dir);
  CHECK(fs::exists(dir / "a.json"));
  CHECK(fs::exists(dir / "b.csv"));
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");
  fs::remove_all(dir);
  // A file where the directory should be makes the write fail with an I/O error.
  { std::ofstream(dir.string()) << "x"; }
  CHECK_THROWS_AS(b.write(dir), Error);
  fs::remove(dir);
}

TEST_CASE("experiment configuration") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.N = -3;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config_from_json(Json::parse(R"({"kind":"hfun","model":"sphere","N":"inf","d":0.3})"));
  CHECK(c.kind == "hfun");
  CHECK(std::isinf(c.N));
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"bogus":1})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"k":"one"})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse("[1,2]")), Error);
  ExperimentConfig bad;
  bad.model = "torus";
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("suites are deterministic in the seed") {
  ExperimentConfig c;
  c.kind = "pucci";
  c.seed = 42;
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(suite_json(a[i], c).dump() == suite_json(b[i], c).dump());
}
