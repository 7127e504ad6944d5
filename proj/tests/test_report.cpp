#include <doctest.h>

#include <set>
#include <sstream>

#include "cmpk/report.hpp"
#include "reference_block.hpp"

using namespace cmpk;

TEST_SUITE("report") {

TEST_CASE("fixed-width integers") {
  CHECK(fortran_int(7, 4) == "   7");
  CHECK(fortran_int(-3, 2) == "-3");
  CHECK(fortran_int(123, 2) == "**");
  CHECK(fortran_int(-10, 2) == "**");
}

TEST_CASE("fixed-width report for (3,3,2)") {
  CHECK(paper_report(assign_dofs({3, 3, 2})) == kReport332);
}

TEST_CASE("debug face checks are opt-in") {
  const auto table = assign_dofs({3, 3, 2});
  const auto with = paper_report(table, true);
  CHECK(with.rfind("check: ", 0) == 0);
  CHECK(with.size() > paper_report(table).size());
  CHECK(with.find(kReport332) != std::string::npos);
}

TEST_CASE("json round trip") {
  for (const ElementParams p : {ElementParams{2, 1, 0}, ElementParams{3, 2, 1}}) {
    const auto table = assign_dofs(p);
    const auto doc = table_to_json(table);
    const auto parsed = nlohmann::json::parse(doc.dump());
    CHECK(table_from_json(parsed) == table);
  }
}

TEST_CASE("json layout for Argyris") {
  const auto doc = table_to_json(assign_dofs({2, 1, 0}));
  CHECK(doc["params"]["k"] == 5);
  CHECK(doc["totals"]["assigned"] == 21);
  std::set<std::vector<int>> homes;
  std::size_t members = 0;
  for (const auto& g : doc["groups"]) {
    if (!g["members"].empty()) homes.insert(g["vertices"].get<std::vector<int>>());
    members += g["members"].size();
  }
  CHECK(members == 21);
  CHECK(homes.size() == 6);  // 3 vertices + 3 edges; the cell gets nothing
}

TEST_CASE("json rejects a broken partition") {
  auto doc = nlohmann::json::parse(table_to_json(assign_dofs({2, 1, 0})).dump());
  doc["groups"][0]["members"].erase(0);
  doc["groups"][0]["ordinals"].erase(0);
  CHECK_THROWS_AS(table_from_json(doc), std::invalid_argument);
}

TEST_CASE("csv rows") {
  const auto csv = table_to_csv(assign_dofs({2, 1, 0}));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,a0,a1,a2,level,vertices,order,ordinal");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 21);
}

}
