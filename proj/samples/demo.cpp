// Ranks of a few small links, then the axis-link statistic for two braids.
#include <iostream>

#include "khrank/khrank.hpp"

using namespace khrank;

int main() {
  const Dataset table = builtin_dataset();
  for (const char* name : {"unknot", "L2a1", "3_1", "L4a1", "L6n1"}) {
    const LinkDiagram d = find_entry(table, name).diagram();
    const ClassificationReport r = classify_by_rank(d, name);
    std::cout << name << ": components " << r.components << ", rank " << r.total << ", class " << r.match << '\n';
  }

  // U together with the closure of sigma_1 is L4a1 again.
  std::cout << "axis 2:1: rank " << total_rank(axis_link_diagram(parse_braid("2:1"))) << '\n';

  for (const char* w : {"2:1", "3:1 2"}) {
    const AlexanderReport a = lemma_bound_report(parse_braid(w));
    std::cout << w << ": delta " << to_string(a.delta) << ", stat " << a.stat << '\n';
  }
}
