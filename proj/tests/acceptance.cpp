// Acceptance run: one PASS/FAIL line per criterion, details indented above it.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>

#include <fmt/format.h>

#include "cmpk/counts.hpp"
#include "cmpk/report.hpp"
#include "cmpk/verify.hpp"
#include "reference_block.hpp"

using namespace cmpk;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void detail(const std::string& line) { std::cout << "    " << line << "\n" << std::flush; }

struct Outcome {
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail("failed: " + what);
    }
  }
};

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

bool generate_report(Outcome& o) {
  const auto t0 = Clock::now();
  int status = 0;
  const std::string out = run_command(std::string(CMPK_CLI) + " generate -n 3 -m 3 -k1 2 --format paper", status);
  const double secs = since(t0);
  detail(fmt::format("cli exit status {}, {} bytes, {:.3f} s", status, out.size(), secs));
  o.require(status == 0, "cli exit status 0");
  o.require(out == kReport332, "output identical to the reference block");
  if (out != kReport332) {
    std::size_t i = 0;
    while (i < out.size() && i < std::string(kReport332).size() && out[i] == kReport332[i]) ++i;
    detail(fmt::format("first difference at byte {}", i));
  }
  o.require(secs < 5.0, "runtime under 5 s");
  return o.ok;
}

bool dimension_identities(Outcome& o) {
  const auto t0 = Clock::now();
  const auto sweep = oracle_sweep(4, 4, 2, 2);
  std::set<std::tuple<int, int, int>> covered;
  for (const auto& c : sweep.cases) {
    covered.insert({c.params.n, c.params.m, c.params.k1});
    if (!c.ok()) {
      for (const auto& f : c.failures) detail(fmt::format("({},{},{}): {}", c.params.n, c.params.m, c.params.k1, f));
    }
  }
  o.require(sweep.ok(), "every case partitions and matches its closed forms");
  bool complete = true;
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= (n == 4 ? 2 : 4); ++m)
      for (int k1 = 0; k1 <= (n == 4 ? 1 : 2); ++k1) complete = complete && covered.count({n, m, k1}) == 1;
  o.require(complete, "sweep covers the required (n, m, k1) ranges");
  const auto c340 = verify_dimension_identity(3, 4, 0);
  detail(fmt::format("(3,4,0): {} = C(36,3) = {}", c340.closed_form.grand_total, c340.dim));
  o.require(c340.ok() && c340.closed_form.grand_total == 7140, "(3,4,0) total 7140");
  const double secs = since(t0);
  detail(fmt::format("{} cases, {:.2f} s", sweep.cases.size(), secs));
  o.require(secs < 120.0, "sweep under 2 min");
  return o.ok;
}

bool unisolvency(Outcome& o) {
  struct Case {
    ElementParams p;
    double threshold;
  };
  for (const auto& [p, threshold] : {Case{{2, 1, 0}, 1e-8}, Case{{2, 2, 0}, 1e-8}, Case{{3, 1, 0}, 1e-8}, Case{{3, 2, 0}, 1e-6}}) {
    const auto t0 = Clock::now();
    const auto element = assemble_element(p, Simplex::reference(p.n));
    const auto& dual = element.dual;
    const bool residual_ok = !dual.singular && dual.residual + dual.residual_bound < threshold;
    ReproductionReport repro;
    if (!dual.singular) repro = interpolation_reproduction(element, 2024, 10);
    const double secs = since(t0);
    detail(fmt::format("({},{},{}) N={}: residual {:.2e} (+bound {:.1e}) < {:.0e}, cond ~ {:.1e}, "
                       "reproduction {:.1e} <= {:.1e} at {} probes, {:.2f} s",
                       p.n, p.m, p.k1, element.functionals.size(), dual.residual, dual.residual_bound, threshold,
                       dual.condition_estimate, repro.max_error, repro.tolerance, repro.probes, secs));
    o.require(residual_ok, fmt::format("({},{},{}) residual", p.n, p.m, p.k1));
    o.require(repro.pass && repro.probes == 10, fmt::format("({},{},{}) reproduction", p.n, p.m, p.k1));
    o.require(secs < 60.0, fmt::format("({},{},{}) under 60 s", p.n, p.m, p.k1));
  }
  return o.ok;
}

bool continuity(Outcome& o) {
  for (const ElementParams p : {ElementParams{2, 1, 0}, ElementParams{2, 2, 0}, ElementParams{3, 1, 0}}) {
    const auto t0 = Clock::now();
    bool matched = true;
    bool next_order_seen = false;
    double worst = 0.0;
    double best_power = 0.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = continuity_jump_test(p, CellPair::standard(p.n), seed);
      matched = matched && r.pass();
      for (int d = 0; d <= p.m; ++d) worst = std::max(worst, r.orders[static_cast<std::size_t>(d)].relative);
      best_power = std::max(best_power, r.power());
      next_order_seen = next_order_seen || r.power() > 1e-3;
    }
    detail(fmt::format("({},{},{}): orders 0..{} max relative jump {:.2e}, order {} jump {:.2e}, {:.2f} s", p.n, p.m,
                       p.k1, p.m, worst, p.m + 1, best_power, since(t0)));
    o.require(matched, fmt::format("({},{},{}) orders 0..m below 1e-7", p.n, p.m, p.k1));
    o.require(next_order_seen, fmt::format("({},{},{}) order m+1 jump above 1e-3", p.n, p.m, p.k1));
  }

  const auto t0 = Clock::now();
  JumpOptions options;
  options.tolerance = 1e-5;
  const auto r = continuity_jump_test({4, 1, 0}, CellPair::standard(4), 1, options);
  const double secs = since(t0);
  for (const auto& od : r.orders) {
    detail(fmt::format("(4,1,0) order {}: relative jump {:.2e}", od.order, od.relative));
  }
  detail(fmt::format("(4,1,0): {:.1f} s", secs));
  o.require(r.pass(), "(4,1,0) orders 0..1 below 1e-5");
  o.require(secs < 600.0, "(4,1,0) under 10 min");
  return o.ok;
}

bool property_suites(Outcome& o) {
  const auto t0 = Clock::now();

  // assignment: partition, membership, priority
  int tables = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= (n == 4 ? 2 : 4); ++m) {
      for (int k1 = 0; k1 <= (n == 4 ? 1 : 2); ++k1) {
        const ElementParams p{n, m, k1};
        const auto table = assign_dofs(p);
        ++tables;
        const auto issues = check_partition(table);
        o.require(issues.empty(), fmt::format("({},{},{}) partition and membership", n, m, k1));
        bool priority = true;
        for (const auto& g : table.groups) {
          for (const auto& alpha : g.members) {
            for (int lower = 0; lower < g.level() && priority; ++lower) {
              for (const auto& f : enumerate_subsimplices(n, lower)) {
                if (p.k() - alpha.partial_sum(f.vertices()) <= p.max_order(lower)) priority = false;
              }
            }
            for (const auto& f : enumerate_subsimplices(n, g.level())) {
              if (f == g.subsimplex) break;
              if (p.k() - alpha.partial_sum(f.vertices()) <= p.max_order(g.level())) priority = false;
            }
            for (int d = 0; d < g.order; ++d) {
              if (alpha.partial_sum(g.subsimplex.vertices()) == p.k() - d) priority = false;
            }
          }
        }
        o.require(priority, fmt::format("({},{},{}) priority", n, m, k1));

        // functional distinctness
        try {
          const auto fs = realize_functionals(table, Simplex::reference(n));
          o.require(static_cast<std::int64_t>(fs.size()) == table.size(), "one functional per index");
        } catch (const std::exception& e) {
          o.require(false, fmt::format("({},{},{}) distinct functionals: {}", n, m, k1, e.what()));
        }
      }
    }
  }
  detail(fmt::format("assignment properties and functional distinctness on {} tables", tables));

  // Bernstein: partition of unity and finite-difference derivatives
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double pou = 0.0;
  double fd = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const Simplex s = CellPair::standard(n).cell_b;
    for (int k : {3, 5, 9}) {
      const BernsteinBasis b(k, s);
      for (int t = 0; t < 4; ++t) {
        Vector lambda(n + 1);
        for (int i = 0; i <= n; ++i) lambda(i) = u(rng);
        const Vector x = s.point(lambda / lambda.sum());
        pou = std::max(pou, std::abs(b.values(x).sum() - 1.0));
        Matrix dirs = Matrix::Random(n, 2);
        dirs.colwise().normalize();
        const double h = 1e-5;
        const std::vector<int> powers{1 + t % 2, t / 2};
        std::vector<int> lower = powers;
        lower[0] -= 1;
        const Vector exact = b.derivative_row(x, dirs, powers);
        const Vector approx =
            (b.derivative_row(x + h * dirs.col(0), dirs, lower) - b.derivative_row(x - h * dirs.col(0), dirs, lower)) / (2 * h);
        fd = std::max(fd, (approx - exact).lpNorm<Eigen::Infinity>() / exact.lpNorm<Eigen::Infinity>());
      }
    }
  }
  detail(fmt::format("Bernstein: |sum - 1| <= {:.1e}, finite-difference relative error <= {:.1e}", pou, fd));
  o.require(pou < 1e-12, "partition of unity");
  o.require(fd < 1e-6, "finite-difference derivatives at 1e-6 relative");

  // normal frames: the same sub-simplex seen from two cells yields the same frame
  int frames = 0;
  bool same = true;
  for (int n = 2; n <= 4; ++n) {
    const auto pair = CellPair::standard(n);
    for (int level = 1; level < n; ++level) {
      for (const auto& fa : enumerate_subsimplices(n, level)) {
        const auto key = pair.cell_a.global_key(fa);
        for (const auto& fb : enumerate_subsimplices(n, level)) {
          if (pair.cell_b.global_key(fb) != key) continue;
          const auto a = normal_frame(pair.cell_a.sorted_vertex_coords(fa));
          const auto b = normal_frame(pair.cell_b.sorted_vertex_coords(fb));
          same = same && a.normal == b.normal && a.tangent == b.tangent;
          ++frames;
        }
      }
    }
  }
  detail(fmt::format("normal frames: {} shared sub-simplices compared", frames));
  o.require(same && frames > 0, "frames independent of the cell");

  detail(fmt::format("{:.2f} s", since(t0)));
  return o.ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 report reproduction (3,3,2)", generate_report},
      {"2 dimension identities", dimension_identities},
      {"3 unisolvency", unisolvency},
      {"4 continuity", continuity},
      {"5 property suites", property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << "criterion " << c.name << "\n" << std::flush;
    failed += o.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : fmt::format("{} criteria failed", failed)) << "\n";
  return failed == 0 ? 0 : 1;
}
