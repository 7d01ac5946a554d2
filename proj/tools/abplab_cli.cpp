#include "abplab/experiments.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace abplab;

namespace {

double parse_N(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "--N must be a number or 'inf'");
  }
  require(used == s.size(), ErrorKind::Config, "--N must be a number or 'inf'");
  return v;
}

struct Flags {
  ExperimentConfig cfg;
  std::string N = "2";
  std::string format = "json";
  std::string out;
  std::string config;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags given on the command line take precedence");
  sub->add_option("--model", f.cfg.model, "euclidean|sphere|hyperbolic|gaussian");
  sub->add_option("--k", f.cfg.k, "curvature magnitude of the sphere or hyperbolic plane");
  sub->add_option("--lambda", f.cfg.lambda, "gaussian plane weight parameter");
  sub->add_option("--K", f.cfg.K, "Ricci lower bound magnitude");
  sub->add_option("--N", f.N, "effective dimension, or inf");
  sub->add_option("--R", f.cfg.R, "reference radius");
  sub->add_option("--r", f.cfg.r, "working radius");
  sub->add_option("--a", f.cfg.a, "paraboloid opening");
  sub->add_option("--resolution", f.cfg.resolution, "grid resolution (suite default when omitted)");
  sub->add_option("--seed", f.cfg.seed, "seed of the counter-based generator");
  sub->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", f.out, "output directory (ABPLAB_OUT overrides)");
}

// Command-line values override the config file for options that were given.
ExperimentConfig merge(CLI::App* sub, const Flags& f) {
  ExperimentConfig c = f.cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    require(static_cast<bool>(in), ErrorKind::Config, "cannot read config " + f.config);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
    }
    ExperimentConfig base;
    base.kind = c.kind;
    ExperimentConfig fromfile = config_from_json(j, base);
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (!given("--model")) c.model = fromfile.model;
    if (!given("--k")) c.k = fromfile.k;
    if (!given("--lambda")) c.lambda = fromfile.lambda;
    if (!given("--K")) c.K = fromfile.K;
    if (!given("--R")) c.R = fromfile.R;
    if (!given("--r")) c.r = fromfile.r;
    if (!given("--a")) c.a = fromfile.a;
    if (!given("--resolution")) c.resolution = fromfile.resolution;
    if (!given("--seed")) c.seed = fromfile.seed;
    if (!given("--N")) c.N = fromfile.N;
    else c.N = parse_N(f.N);
    if (sub->get_option_no_throw("--b") && !given("--b")) c.b = fromfile.b;
    if (sub->get_option_no_throw("--u") && !given("--u")) c.u = fromfile.u;
    if (sub->get_option_no_throw("--theorem") && !given("--theorem")) c.theorem = fromfile.theorem;
    if (sub->get_option_no_throw("--d") && !given("--d")) c.d = fromfile.d;
    if (sub->get_option_no_throw("--fit") && !given("--fit")) c.fit = fromfile.fit;
    if (sub->get_option_no_throw("--dmax") && !given("--dmax")) c.dmax = fromfile.dmax;
    if (sub->get_option_no_throw("--samples") && !given("--samples")) c.samples = fromfile.samples;
    return c;
  }
  c.N = parse_N(f.N);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abplab: numerical checks for ABP estimates and Harnack inequalities on model spaces"};
  app.require_subcommand(1);
  Flags f;

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"constants", "constants ledger and its lemma checks"},
      {"contact", "contact sets of paraboloids"},
      {"abp-check", "measure estimate on a polar grid"},
      {"barrier-check", "barrier function and Ricci comparison"},
      {"doubling", "doubling, Vitali covering and Lp bracketing"},
      {"harnack-check", "Harnack inequalities and the local growth lemma"},
      {"hfun", "Harnack functional of the model spaces"},
      {"pucci", "Pucci extremal operators"},
      {"all", "every suite with the given parameters"}};
  std::map<std::string, CLI::App*> handles;
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, f);
    handles[name] = sub;
  }
  handles["abp-check"]->add_option("--u", f.cfg.u, "quadratic|random");
  handles["abp-check"]->add_option("--b", f.cfg.b, "coefficient of (b/2) rho^2");
  handles["contact"]->add_option("--b", f.cfg.b, "coefficient of (b/2) rho^2");
  handles["harnack-check"]->add_option("--theorem", f.cfg.theorem, "sup|sub|full|growth|pucci|all");
  handles["hfun"]->add_option("--d", f.cfg.d, "geodesic radius");
  handles["hfun"]->add_flag("--fit", f.cfg.fit, "fit the small-radius expansion");
  handles["hfun"]->add_option("--dmax", f.cfg.dmax, "largest fitted radius, in units of 1/sqrt(k)");
  handles["hfun"]->add_option("--samples", f.cfg.samples, "number of fitted radii");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  static const std::map<std::string, std::string> kinds = {
      {"constants", "constants"}, {"contact", "contact"},         {"abp-check", "abp"}, {"barrier-check", "barrier"},
      {"doubling", "doubling"},   {"harnack-check", "harnack"},   {"hfun", "hfun"},     {"pucci", "pucci"},
      {"all", "all"}};

  try {
    f.cfg.kind = kinds.at(sub->get_name());
    ExperimentConfig cfg = merge(sub, f);
    cfg.kind = f.cfg.kind;
    cfg.validate();
    std::string out = f.out;
    if (const char* env = std::getenv("ABPLAB_OUT"); env && *env) out = env;

    const std::vector<SuiteOutput> results = run_experiment(cfg);
    OutputBundle bundle;
    for (const auto& s : results) add_suite_files(bundle, s, cfg, f.format);

    bool ok = true;
    for (const auto& s : results)
      for (const auto& r : s.reports) {
        ok = ok && r.pass;
        std::fprintf(stderr, "%s %s: lhs=%.10g rhs=%.10g\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.lhs, r.rhs);
      }
    if (out.empty()) {
      for (const auto& [name, content] : bundle.files)
        if (name.size() < 4 || name.substr(name.size() - 4) != ".dat") std::cout << content;
    } else {
      bundle.write(out);
    }
    return ok ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "abplab: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "abplab: %s\n", e.what());
    return 2;
  }
}
