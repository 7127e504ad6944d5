// Command-line front end: tabulate DOF index sets and run the checks.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cmpk/assignment.hpp"
#include "cmpk/counts.hpp"
#include "cmpk/report.hpp"
#include "cmpk/verify.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
  int n = 3;
  int m = 3;
  int k1 = 2;
  std::string format = "paper";
  std::uint64_t seed = 1;
  std::string out;
  bool debug_face_checks = false;
  double threshold = 1e-8;
  double tolerance = 1e-7;
  int samples = 32;
  int m_max_4d = 2;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError(fmt::format("cannot open {} for writing", cfg.out));
  file << text;
}

cmpk::ElementParams params_of(const RunConfig& cfg) {
  cmpk::ElementParams p{cfg.n, cfg.m, cfg.k1};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_generate(const RunConfig& cfg) {
  const auto table = cmpk::assign_dofs(params_of(cfg));
  if (cfg.format == "paper") {
    emit(cfg, cmpk::paper_report(table, cfg.debug_face_checks));
  } else if (cfg.format == "json") {
    emit(cfg, cmpk::table_to_json(table).dump(1) + "\n");
  } else {
    emit(cfg, cmpk::table_to_csv(table));
  }
  return kPass;
}

int run_verify(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  if (p.n < 2 || p.n > 4) throw UsageError("verify needs n in 2..4 (closed forms)");
  const auto check = cmpk::verify_dimension_identity(p.n, p.m, p.k1);
  const auto table = cmpk::assign_dofs(p);
  auto failures = cmpk::check_partition(table);
  failures.insert(failures.end(), check.mismatches.begin(), check.mismatches.end());

  if (cfg.format == "json") {
    nlohmann::ordered_json doc;
    doc["params"] = {{"n", p.n}, {"m", p.m}, {"k1", p.k1}, {"k", p.k()}};
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const auto& l : check.closed_form.levels) {
      levels.push_back({{"level", l.level}, {"entity_count", l.entity_count}, {"per_entity", l.per_entity},
                        {"total", l.total}});
    }
    doc["levels"] = std::move(levels);
    doc["closed_form_total"] = check.closed_form.grand_total;
    doc["dim"] = check.dim;
    doc["failures"] = failures;
    doc["pass"] = failures.empty();
    emit(cfg, doc.dump(1) + "\n");
  } else {
    std::string text = fmt::format("C^{}-P_{}^({}) (k1 = {})\n", p.m, p.k(), p.n, p.k1);
    for (const auto& l : check.closed_form.levels) {
      text += fmt::format("  level {}: {:>3} x {:>8} = {:>9}\n", l.level, l.entity_count, l.per_entity, l.total);
    }
    text += fmt::format("  {} = {}  (dofs = dim P_{})\n", check.closed_form.grand_total, check.dim, p.k());
    for (const auto& f : failures) text += "  FAIL: " + f + "\n";
    text += failures.empty() ? "pass\n" : "fail\n";
    emit(cfg, text);
  }
  return failures.empty() ? kPass : kCheckFailed;
}

int run_unisolvency(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto element = cmpk::assemble_element(p, cmpk::Simplex::reference(p.n));
  const double residual = element.dual.residual;
  const bool ok_dual = !element.dual.singular && residual + element.dual.residual_bound < cfg.threshold;
  cmpk::ReproductionReport repro;
  if (!element.dual.singular) repro = cmpk::interpolation_reproduction(element, cfg.seed);
  const bool ok = ok_dual && repro.pass;
  const double secs = seconds_since(t0);

  if (cfg.format == "json") {
    nlohmann::ordered_json doc{{"params", {{"n", p.n}, {"m", p.m}, {"k1", p.k1}, {"k", p.k()}}},
                               {"size", element.functionals.size()},
                               {"residual", residual},
                               {"residual_bound", element.dual.residual_bound},
                               {"condition_estimate", element.dual.condition_estimate},
                               {"threshold", cfg.threshold},
                               {"singular", element.dual.singular},
                               {"reproduction_error", repro.max_error},
                               {"reproduction_tolerance", repro.tolerance},
                               {"seconds", secs},
                               {"pass", ok}};
    emit(cfg, doc.dump(1) + "\n");
  } else {
    std::string text = fmt::format("C^{}-P_{}^({}): {} functionals\n", p.m, p.k(), p.n, element.functionals.size());
    if (element.dual.singular) {
      text += "  Vandermonde matrix singular to working precision\n";
    } else {
      text += fmt::format("  residual max|VC-I| = {:.3e} (bound {:.1e}, threshold {:.1e})\n", residual,
                          element.dual.residual_bound, cfg.threshold);
      text += fmt::format("  condition estimate = {:.3e}\n", element.dual.condition_estimate);
      text += fmt::format("  interpolation reproduction error = {:.3e} (tolerance {:.3e})\n", repro.max_error,
                          repro.tolerance);
    }
    text += fmt::format("  {:.2f} s\n{}\n", secs, ok ? "pass" : "fail");
    emit(cfg, text);
  }
  return ok ? kPass : kCheckFailed;
}

int run_continuity(const RunConfig& cfg) {
  const auto p = params_of(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto pair = cmpk::CellPair::standard(p.n);
  cmpk::JumpOptions options;
  options.tolerance = cfg.tolerance;
  options.samples = cfg.samples;
  const auto report = cmpk::continuity_jump_test(p, pair, cfg.seed, options);
  const double secs = seconds_since(t0);

  if (cfg.format == "json") {
    nlohmann::ordered_json orders = nlohmann::ordered_json::array();
    for (const auto& o : report.orders) {
      orders.push_back({{"order", o.order}, {"max_jump", o.max_jump}, {"scale", o.scale},
                        {"relative", o.relative}, {"pass", o.pass}});
    }
    nlohmann::ordered_json doc{{"params", {{"n", p.n}, {"m", p.m}, {"k1", p.k1}, {"k", p.k()}}},
                               {"seed", report.seed},
                               {"samples", report.samples},
                               {"shared_functionals", report.shared_functionals},
                               {"tolerance", report.tolerance},
                               {"orders", std::move(orders)},
                               {"seconds", secs},
                               {"pass", report.pass()}};
    emit(cfg, doc.dump(1) + "\n");
  } else {
    std::string text = fmt::format("C^{}-P_{}^({}) two-cell jump test, seed {}, {} shared functionals, {} samples\n",
                                   p.m, p.k(), p.n, report.seed, report.shared_functionals, report.samples);
    text += "  order  max jump    scale       relative\n";
    for (const auto& o : report.orders) {
      const char* tag = o.order <= p.m ? (o.pass ? "ok" : "FAIL") : "(m+1, expected nonzero)";
      text += fmt::format("  {:>5}  {:.3e}  {:.3e}  {:.3e}  {}\n", o.order, o.max_jump, o.scale, o.relative, tag);
    }
    text += fmt::format("  {:.2f} s\n{}\n", secs, report.pass() ? "pass" : "fail");
    emit(cfg, text);
  }
  return report.pass() ? kPass : kCheckFailed;
}

int run_sweep(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.m < 1 || cfg.k1 < 0) throw UsageError("sweep bounds need n >= 2, m >= 1, k1 >= 0");
  const auto report = cmpk::oracle_sweep(cfg.n, cfg.m, cfg.k1, cfg.m_max_4d);
  if (cfg.format == "json") {
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const auto& c : report.cases) {
      cases.push_back({{"n", c.params.n}, {"m", c.params.m}, {"k1", c.params.k1}, {"k", c.params.k()},
                       {"dim", c.dim}, {"total", c.total}, {"failures", c.failures}});
    }
    emit(cfg, nlohmann::ordered_json{{"cases", std::move(cases)}, {"pass", report.ok()}}.dump(1) + "\n");
  } else {
    std::string text;
    for (const auto& c : report.cases) {
      text += fmt::format("(n m k1) = ({} {} {})  k = {:>3}  dim = {:>8}  total = {:>8}  {}\n", c.params.n, c.params.m,
                          c.params.k1, c.params.k(), c.dim, c.total, c.ok() ? "ok" : "FAIL");
      for (const auto& f : c.failures) text += "    " + f + "\n";
    }
    if (const auto* bad = report.first_failure()) {
      text += fmt::format("fail: first failing case (n m k1) = ({} {} {})\n", bad->params.n, bad->params.m,
                          bad->params.k1);
    } else {
      text += fmt::format("pass: {} cases\n", report.cases.size());
    }
    emit(cfg, text);
  }
  return report.ok() ? kPass : kCheckFailed;
}

void add_params(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-n,--dim", cfg.n, "spatial dimension n");
  sub->add_option("-m,--smoothness", cfg.m, "smoothness order m");
  sub->add_option("--excess,--k1", cfg.k1, "excess degree k1 = k - 2^n m - 1 (also -k1)");
  sub->add_option("--out", cfg.out, "write the report to this file instead of stdout");
}

// CLI11 short options are single characters; accept the two-letter -k1.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) {
    std::string a = argv[i];
    if (a == "-k1") {
      a = "--excess";
    } else if (a.rfind("-k1=", 0) == 0) {
      a = "--excess=" + a.substr(4);
    }
    args.push_back(std::move(a));
  }
  return args;  // reversed, as CLI11::App::parse(std::vector) expects
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabulate and verify nodal DOF sets of C^m-P_k^(n) simplicial elements"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("generate", "tabulate the DOF index sets");
  add_params(gen, cfg);
  gen->add_option("--format", cfg.format, "paper | json | csv")->check(CLI::IsMember({"paper", "json", "csv"}));
  gen->add_flag("--debug-face-checks", cfg.debug_face_checks, "list the first face member of each order");

  auto* ver = app.add_subcommand("verify", "closed forms vs. enumeration vs. dim P_k");
  add_params(ver, cfg);
  ver->add_option("--format", cfg.format, "paper | json")->check(CLI::IsMember({"paper", "json"}));

  auto* uni = app.add_subcommand("unisolvency", "dual-basis residual on the unit right simplex");
  add_params(uni, cfg);
  uni->add_option("--format", cfg.format, "paper | json")->check(CLI::IsMember({"paper", "json"}));
  uni->add_option("--seed", cfg.seed, "seed for the reproduction probe");
  uni->add_option("--threshold", cfg.threshold, "residual threshold");

  auto* con = app.add_subcommand("continuity", "two-cell C^m jump test");
  add_params(con, cfg);
  con->add_option("--format", cfg.format, "paper | json")->check(CLI::IsMember({"paper", "json"}));
  con->add_option("--seed", cfg.seed, "coefficient seed");
  con->add_option("--tolerance", cfg.tolerance, "relative jump tolerance for orders 0..m");
  con->add_option("--samples", cfg.samples, "facet sample points")->check(CLI::Range(20, 100000));

  auto* swp = app.add_subcommand("sweep", "oracle sweep over n = 2..n, m = 1..m, k1 = 0..k1");
  add_params(swp, cfg);
  swp->add_option("--format", cfg.format, "paper | json")->check(CLI::IsMember({"paper", "json"}));
  swp->add_option("--m-max-4d", cfg.m_max_4d, "largest m swept for n = 4");

  // sweep bounds default to n <= 4, m <= 4, k1 <= 2
  swp->preparse_callback([&](std::size_t) {
    cfg.n = 4;
    cfg.m = 4;
    cfg.k1 = 2;
  });

  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) return run_generate(cfg);
    if (ver->parsed()) return run_verify(cfg);
    if (uni->parsed()) return run_unisolvency(cfg);
    if (con->parsed()) return run_continuity(cfg);
    return run_sweep(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
