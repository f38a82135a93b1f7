#pragma once

// Link tables: one JSON object per line with fields name, pd, free_loops,
// components, expected_total (optional) and source.

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "khrank/braid.hpp"
#include "khrank/error.hpp"
#include "khrank/link_diagram.hpp"

namespace khrank {

struct DatasetEntry {
  std::string name;
  std::vector<Quad> pd;
  int free_loops = 0;
  int components = 0;
  std::optional<std::size_t> expected_total;
  std::string source;

  LinkDiagram diagram() const { return LinkDiagram(pd, free_loops); }

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

using Dataset = std::vector<DatasetEntry>;

inline nlohmann::json to_json(const DatasetEntry& e) {
  nlohmann::json j;
  j["name"] = e.name;
  j["pd"] = nlohmann::json::array();
  for (const auto& q : e.pd) j["pd"].push_back(q);
  j["free_loops"] = e.free_loops;
  j["components"] = e.components;
  if (e.expected_total) j["expected_total"] = *e.expected_total;
  j["source"] = e.source;
  return j;
}

inline DatasetEntry entry_from_json(const nlohmann::json& j) {
  try {
    DatasetEntry e;
    e.name = j.at("name").get<std::string>();
    for (const auto& q : j.at("pd")) e.pd.push_back(q.get<Quad>());
    e.free_loops = j.value("free_loops", 0);
    e.components = j.at("components").get<int>();
    if (j.contains("expected_total") && !j.at("expected_total").is_null())
      e.expected_total = j.at("expected_total").get<std::size_t>();
    e.source = j.value("source", std::string());
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad table entry: ") + ex.what());
  }
}

/// Names unique; declared component counts match the diagrams.
inline void validate_dataset(const Dataset& data) {
  std::set<std::string> seen;
  for (const auto& e : data) {
    if (e.name.empty()) throw ParseError("table entry without a name");
    if (!seen.insert(e.name).second) throw ParseError("duplicate table entry name '" + e.name + "'");
    const int n = e.diagram().component_count();
    if (n != e.components)
      throw ParseError("entry '" + e.name + "' declares " + std::to_string(e.components) + " components but its diagram has " +
                       std::to_string(n));
  }
}

inline Dataset read_dataset(std::istream& in) {
  Dataset data;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ParseError("table line " + std::to_string(lineno) + ": " + ex.what());
    }
    data.push_back(entry_from_json(j));
  }
  validate_dataset(data);
  return data;
}

inline Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table '" + path + "'");
  return read_dataset(in);
}

inline void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& e : data) out << to_json(e).dump() << '\n';
}

namespace detail {

inline DatasetEntry make_entry(std::string name, const LinkDiagram& d, std::optional<std::size_t> expected,
                               std::string source) {
  return {std::move(name), d.crossings(), d.free_loops(), d.component_count(), expected, std::move(source)};
}

inline DatasetEntry pd_entry(std::string name, const char* pd, std::optional<std::size_t> expected, std::string source) {
  return make_entry(std::move(name), parse_pd(pd), expected, std::move(source));
}

inline DatasetEntry mirror_entry(const DatasetEntry& e) {
  return make_entry(e.name + "-mirror", mirror(e.diagram()), e.expected_total, "mirror() of " + e.name);
}

}  // namespace detail

/// The shipped table. Expected totals are twice the determinant for
/// alternating entries, products for split ones, and the stated rank for
/// L6n1; the two non-alternating 7-crossing links carry none.
inline Dataset builtin_dataset() {
  using detail::pd_entry;
  const std::string knotinfo = "KnotInfo pd_notation";
  const std::string linkinfo = "LinkInfo pd_notation_math, orientation ";
  Dataset data;
  data.push_back(pd_entry("unknot", "O", 2, "crossingless circle"));
  data.push_back(pd_entry("unlink-2", "O O", 4, "crossingless circles"));
  data.push_back(pd_entry("unlink-3", "O O O", 8, "crossingless circles"));
  data.push_back(pd_entry("unlink-4", "O O O O", 16, "crossingless circles"));

  const DatasetEntry trefoil = pd_entry("3_1", "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)", 6, knotinfo);
  data.push_back(trefoil);
  data.push_back(detail::mirror_entry(trefoil));
  data.push_back(pd_entry("4_1", "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)", 10, knotinfo));
  data.push_back(pd_entry("5_1", "X(2,8,3,7);X(4,10,5,9);X(6,2,7,1);X(8,4,9,3);X(10,6,1,5)", 10, knotinfo));
  data.push_back(pd_entry("5_2", "X(1,5,2,4);X(3,9,4,8);X(5,1,6,10);X(7,3,8,2);X(9,7,10,6)", 14, knotinfo));
  data.push_back(pd_entry("6_1", "X(1,7,2,6);X(3,10,4,11);X(5,3,6,2);X(7,1,8,12);X(9,4,10,5);X(11,9,12,8)", 18, knotinfo));
  data.push_back(pd_entry("6_2", "X(1,8,2,9);X(3,11,4,10);X(5,1,6,12);X(7,2,8,3);X(9,7,10,6);X(11,5,12,4)", 22, knotinfo));
  data.push_back(pd_entry("6_3", "X(4,2,5,1);X(8,4,9,3);X(12,9,1,10);X(10,5,11,6);X(6,11,7,12);X(2,8,3,7)", 26, knotinfo));
  data.push_back(pd_entry("7_1", "X(1,9,2,8);X(3,11,4,10);X(5,13,6,12);X(7,1,8,14);X(9,3,10,2);X(11,5,12,4);X(13,7,14,6)",
                          14, knotinfo));

  const DatasetEntry hopf = pd_entry("L2a1", "X(4,1,3,2);X(2,3,1,4)", 4, linkinfo + "{0}");
  data.push_back(hopf);
  data.push_back(detail::mirror_entry(hopf));
  const DatasetEntry l4a1 = pd_entry("L4a1", "X(6,1,7,2);X(8,3,5,4);X(2,5,3,6);X(4,7,1,8)", 8, linkinfo + "{0}");
  data.push_back(l4a1);
  data.push_back(detail::mirror_entry(l4a1));
  data.push_back(pd_entry("L5a1", "X(6,1,7,2);X(10,7,5,8);X(4,5,1,6);X(2,10,3,9);X(8,4,9,3)", 16, linkinfo + "{0}"));
  data.push_back(pd_entry("L6a1", "X(6,1,7,2);X(10,3,11,4);X(12,8,5,7);X(8,12,9,11);X(2,5,3,6);X(4,9,1,10)", 24,
                          linkinfo + "{0}"));
  data.push_back(pd_entry("L6a2", "X(8,1,9,2);X(12,5,7,6);X(10,3,11,4);X(4,11,5,12);X(2,7,3,8);X(6,9,1,10)", 20,
                          linkinfo + "{0}"));
  data.push_back(pd_entry("L6a3", "X(8,1,9,2);X(2,9,3,10);X(10,3,11,4);X(12,5,7,6);X(6,7,1,8);X(4,11,5,12)", 12,
                          linkinfo + "{0}"));
  data.push_back(pd_entry("L6a4", "X(6,1,7,2);X(12,8,9,7);X(4,12,1,11);X(10,5,11,6);X(8,4,5,3);X(2,9,3,10)", 32,
                          linkinfo + "{0,0}"));
  data.push_back(pd_entry("L6a5", "X(6,1,7,2);X(10,3,11,4);X(12,7,9,8);X(8,11,5,12);X(2,5,3,6);X(4,9,1,10)", 24,
                          linkinfo + "{0,0}"));
  const DatasetEntry l6n1 = pd_entry("L6n1", "X(6,1,7,2);X(12,8,9,7);X(4,12,1,11);X(5,11,6,10);X(3,8,4,5);X(9,3,10,2)", 12,
                                     linkinfo + "{0,0}");
  data.push_back(l6n1);
  data.push_back(detail::mirror_entry(l6n1));
  data.push_back(pd_entry("L7a1", "X(6,1,7,2);X(12,7,13,8);X(4,13,1,14);X(10,6,11,5);X(8,4,9,3);X(14,10,5,9);X(2,12,3,11)",
                          48, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a2", "X(6,1,7,2);X(10,3,11,4);X(14,11,5,12);X(12,7,13,8);X(8,13,9,14);X(2,5,3,6);X(4,9,1,10)",
                          40, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a3", "X(6,1,7,2);X(10,4,11,3);X(12,8,13,7);X(14,10,5,9);X(8,14,9,13);X(2,5,3,6);X(4,12,1,11)",
                          32, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a4", "X(6,1,7,2);X(10,4,11,3);X(14,8,5,7);X(12,10,13,9);X(8,14,9,13);X(2,5,3,6);X(4,12,1,11)",
                          32, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a5", "X(8,1,9,2);X(10,3,11,4);X(12,6,13,5);X(14,11,7,12);X(4,14,5,13);X(2,7,3,8);X(6,9,1,10)",
                          36, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a6", "X(8,1,9,2);X(10,4,11,3);X(14,10,7,9);X(12,6,13,5);X(2,7,3,8);X(4,12,5,11);X(6,14,1,13)",
                          28, linkinfo + "{0}"));
  data.push_back(pd_entry("L7a7", "X(6,1,7,2);X(10,3,11,4);X(14,12,9,11);X(8,14,5,13);X(12,8,13,7);X(2,5,3,6);X(4,9,1,10)",
                          40, linkinfo + "{0,0}"));
  data.push_back(pd_entry("L7n1", "X(6,1,7,2);X(12,7,13,8);X(4,13,1,14);X(5,10,6,11);X(3,8,4,9);X(9,14,10,5);X(11,2,12,3)",
                          std::nullopt, linkinfo + "{0}"));
  data.push_back(pd_entry("L7n2", "X(6,1,7,2);X(12,7,13,8);X(13,1,14,4);X(5,10,6,11);X(3,8,4,9);X(9,14,10,5);X(2,12,3,11)",
                          std::nullopt, linkinfo + "{0}"));

  data.push_back(detail::make_entry("Hopf#Hopf", braid_closure_diagram(parse_braid("3:1 1 2 2")), 8,
                                    "closure of braid 3:1 1 2 2"));
  data.push_back(detail::make_entry("Hopf+unknot", disjoint_union(hopf.diagram(), LinkDiagram({}, 1)), 8,
                                    "disjoint_union(L2a1, unknot)"));
  data.push_back(detail::make_entry("3_1+unknot", disjoint_union(trefoil.diagram(), LinkDiagram({}, 1)), 12,
                                    "disjoint_union(3_1, unknot)"));

  std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  validate_dataset(data);
  return data;
}

inline const DatasetEntry& find_entry(const Dataset& data, const std::string& name) {
  for (const auto& e : data)
    if (e.name == name) return e;
  throw Error("no table entry named '" + name + "'");
}

}  // namespace khrank
