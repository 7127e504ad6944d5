#include "cmpk/report.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace cmpk {

std::string fortran_int(std::int64_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) > width) return std::string(static_cast<std::size_t>(width), '*');
  return std::string(static_cast<std::size_t>(width) - s.size(), ' ') + s;
}

namespace {

std::string check_line(const DofTable& table, const MultiIndex& alpha) {
  const int n = table.params.n;
  const auto& face = table.group(2, 0, 0).subsimplex;
  const int order = table.params.k() - alpha.partial_sum(face.vertices());
  // a_1..a_n, a_0, level + 1, order + 1, face ordinal, face vertices (1-based)
  std::vector<std::int64_t> values;
  for (int i = 1; i <= n; ++i) values.push_back(alpha[i]);
  values.push_back(alpha[0]);
  values.push_back(3);
  values.push_back(order + 1);
  values.push_back(1);
  for (int v : face.vertices()) values.push_back(v + 1);
  std::string line = "check: ";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 5) line += "    ";
    line += fortran_int(values[i], 4);
  }
  return line;
}

}  // namespace

std::string paper_report(const DofTable& table, bool debug_face_checks) {
  const CountReport summary = group_summary(table);
  std::string out;
  if (debug_face_checks) {
    for (const auto& alpha : first_face_members(table)) out += check_line(table, alpha) + "\n";
  }
  for (const auto& level : summary.levels) {
    std::int64_t cumulative = 0;
    for (std::size_t d = 0; d < level.per_order.size(); ++d) {
      cumulative += level.per_order[d];
      out += "simplex" + fortran_int(level.level, 2) + "  derivative" + fortran_int(static_cast<std::int64_t>(d), 2) +
             " dof " + fortran_int(level.per_order[d], 7) + "  sum=" + fortran_int(cumulative, 8) + "\n";
    }
    out += "level  " + fortran_int(level.level, 2) + "  #simplex  " + fortran_int(level.entity_count, 2) + " dofs" +
           fortran_int(level.per_entity, 7) + " total" + fortran_int(level.total, 8) + "\n";
  }
  const auto& p = table.params;
  out += " (n m k_1)=" + fortran_int(p.n, 2) + fortran_int(p.m, 2) + fortran_int(p.k1, 2) + ", dim P_{" +
         fortran_int(p.k(), 3) + "}=" + fortran_int(summary.dim, 8) + " C^m-P_k^n=" +
         fortran_int(summary.grand_total, 8) + "\n";
  return out;
}

nlohmann::ordered_json table_to_json(const DofTable& table) {
  using nlohmann::ordered_json;
  const auto& p = table.params;
  ordered_json doc;
  doc["params"] = {{"n", p.n}, {"m", p.m}, {"k1", p.k1}, {"k", p.k()}};
  ordered_json groups = ordered_json::array();
  for (const auto& g : table.groups) {
    ordered_json members = ordered_json::array();
    ordered_json ordinals = ordered_json::array();
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      members.push_back(std::vector<int>(g.members[i].entries().begin(), g.members[i].entries().end()));
      ordinals.push_back(i + 1);
    }
    groups.push_back({{"level", g.level()},
                      {"vertices", g.subsimplex.vertices()},
                      {"order", g.order},
                      {"members", std::move(members)},
                      {"ordinals", std::move(ordinals)}});
  }
  doc["groups"] = std::move(groups);

  const CountReport summary = group_summary(table);
  ordered_json levels = ordered_json::array();
  for (const auto& l : summary.levels) {
    levels.push_back({{"level", l.level},
                      {"entity_count", l.entity_count},
                      {"per_order", l.per_order},
                      {"per_entity", l.per_entity},
                      {"total", l.total}});
  }
  doc["totals"] = {{"levels", std::move(levels)}, {"assigned", summary.grand_total}, {"dim", summary.dim}};
  return doc;
}

DofTable table_from_json(const nlohmann::json& doc) {
  try {
    DofTable table;
    const auto& p = doc.at("params");
    table.params = ElementParams{p.at("n").get<int>(), p.at("m").get<int>(), p.at("k1").get<int>()};
    table.params.validate();
    if (p.contains("k") && p.at("k").get<int>() != table.params.k()) {
      throw std::invalid_argument("params.k inconsistent with n, m, k1");
    }
    const int n = table.params.n;
    table.indices = enumerate_multiindices(n, table.params.k());
    table.placements.assign(table.indices.size(), Placement{});

    for (const auto& g : doc.at("groups")) {
      DofGroup group;
      group.subsimplex = SubSimplex(g.at("vertices").get<std::vector<int>>());
      group.order = g.at("order").get<int>();
      if (group.subsimplex.level() != g.at("level").get<int>()) throw std::invalid_argument("group level mismatch");
      const int gi = static_cast<int>(table.groups.size());
      for (const auto& m : g.at("members")) {
        const auto entries = m.get<std::vector<int>>();
        if (static_cast<int>(entries.size()) != n + 1) throw std::invalid_argument("member of wrong length");
        MultiIndex alpha(entries);
        if (alpha.degree() != table.params.k()) throw std::invalid_argument("member of wrong degree");
        auto& placement = table.placements[static_cast<std::size_t>(tuple_rank(alpha))];
        if (placement.group >= 0) throw std::invalid_argument(fmt::format("{} listed twice", alpha.to_string()));
        group.members.push_back(alpha);
        placement = Placement{gi, static_cast<int>(group.members.size())};
      }
      if (g.contains("ordinals")) {
        const auto ordinals = g.at("ordinals").get<std::vector<int>>();
        bool ok = ordinals.size() == group.members.size();
        for (std::size_t i = 0; ok && i < ordinals.size(); ++i) ok = ordinals[i] == static_cast<int>(i) + 1;
        if (!ok) throw std::invalid_argument("ordinals must run 1..size in member order");
      }
      table.groups.push_back(std::move(group));
    }

    // Group layout must match assign_dofs: level, sub-simplex, order.
    int expected = 0;
    for (int level = 0; level <= n; ++level) {
      const auto subs = enumerate_subsimplices(n, level);
      for (const auto& f : subs) {
        for (int d = 0; d <= table.params.max_order(level); ++d, ++expected) {
          if (expected >= static_cast<int>(table.groups.size()) ||
              table.groups[static_cast<std::size_t>(expected)].subsimplex != f ||
              table.groups[static_cast<std::size_t>(expected)].order != d) {
            throw std::invalid_argument(fmt::format("group {} out of layout order", expected));
          }
        }
      }
    }
    if (expected != static_cast<int>(table.groups.size())) throw std::invalid_argument("extra groups");
    for (const auto& pl : table.placements) {
      if (pl.group < 0) throw std::invalid_argument("groups do not cover every multi-index");
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("malformed table JSON: {}", e.what()));
  }
}

std::string table_to_csv(const DofTable& table) {
  const int n = table.params.n;
  std::string out = "index";
  for (int i = 0; i <= n; ++i) out += fmt::format(",a{}", i);
  out += ",level,vertices,order,ordinal\n";
  for (std::size_t i = 0; i < table.indices.size(); ++i) {
    const auto& pl = table.placements[i];
    const auto& g = table.groups[static_cast<std::size_t>(pl.group)];
    out += fmt::format("{},{},{},{},{},{}\n", i + 1, fmt::join(table.indices[i].entries(), ","), g.level(),
                       fmt::join(g.subsimplex.vertices(), " "), g.order, pl.ordinal);
  }
  return out;
}

}  // namespace cmpk
