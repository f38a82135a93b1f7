// khrank command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage, parse or resource error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "khrank/khrank.hpp"

namespace {

using namespace khrank;

struct Globals {
  bool json = false;
  int max_crossings = kDefaultMaxCrossings;
  unsigned jobs = default_jobs();
};

int env_max_crossings() {
  const char* v = std::getenv("KHRANK_MAX_CROSSINGS");
  if (!v || !*v) return kDefaultMaxCrossings;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != std::string(v).size() || n < 0) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParseError(std::string("KHRANK_MAX_CROSSINGS must be a nonnegative integer, got '") + v + "'");
  }
}

struct ResolvedLink {
  std::optional<std::string> name;
  LinkDiagram diagram;
};

/// pd:<PD>, braid:<l:w>, axis:<l:w> or name:<table entry>.
ResolvedLink resolve_link(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("link spec '" + spec + "' needs a prefix: pd:, braid:, axis: or name:");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (kind == "pd") return {std::nullopt, parse_pd(body)};
  if (kind == "braid") return {std::nullopt, braid_closure_diagram(parse_braid(body))};
  if (kind == "axis") return {std::nullopt, axis_link_diagram(parse_braid(body))};
  if (kind == "name") {
    const Dataset data = builtin_dataset();
    for (const auto& e : data)
      if (e.name == body) return {e.name, e.diagram()};
    throw ParseError("no builtin table entry named '" + body + "'");
  }
  throw ParseError("unknown link spec prefix '" + kind + "'");
}

void print_ranks(std::ostream& out, const BigradedRanks& r) {
  out << std::setw(5) << "i" << std::setw(6) << "j" << std::setw(6) << "rank" << '\n';
  for (const auto& [bd, rank] : r.entries)
    out << std::setw(5) << bd.first << std::setw(6) << bd.second << std::setw(6) << rank << '\n';
}

int cmd_kh(const Globals& g, const std::string& spec, bool reduced, bool use_mirror, std::optional<int> basepoint) {
  ResolvedLink link = resolve_link(spec);
  if (use_mirror) {
    link.diagram = mirror(link.diagram);
    if (link.name) *link.name += " (mirrored)";
  }
  const LinkDiagram& d = link.diagram;
  KhOptions o;
  o.max_crossings = g.max_crossings;
  o.jobs = g.jobs;
  const BigradedRanks unreduced = kh_ranks(d, o);
  std::optional<BigradedRanks> red;
  if (d.component_count() > 0) {
    o.reduced = true;
    o.basepoint = basepoint;
    red = kh_ranks(d, o);
  } else if (reduced) {
    throw Error("the empty diagram has no reduced homology");
  }
  if (g.json) {
    nlohmann::json j = rank_report_json(link.name, d, unreduced, red ? red->total : 0);
    if (reduced) j["reduced_bigraded"] = bigraded_json(*red);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (link.name) std::cout << "name: " << *link.name << '\n';
  std::cout << "components: " << d.component_count() << "  crossings: " << d.crossing_count()
            << "  writhe: " << d.writhe() << '\n';
  std::cout << "total: " << unreduced.total << "  reduced_total: " << (red ? red->total : 0) << '\n';
  std::cout << "unreduced (orientation: each component traversed from its smallest arc)\n";
  print_ranks(std::cout, unreduced);
  if (reduced) {
    std::cout << "reduced\n";
    print_ranks(std::cout, *red);
  }
  return 0;
}

int cmd_burau(const Globals& g, const std::string& text) {
  const BraidWord w = parse_braid(text);
  const PolyMatrix m = burau(w);
  const VarNames t_names{"x", "t"};
  if (g.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_string(m(i, k), t_names));
      rows.push_back(row);
    }
    std::cout << nlohmann::json{{"braid", to_string(w)}, {"matrix", rows}}.dump(2) << '\n';
  } else {
    std::cout << to_string(m, t_names) << '\n';
  }
  return 0;
}

int cmd_alex(const Globals& g, const std::string& text) {
  const AlexanderReport r = lemma_bound_report(parse_braid(text));
  if (g.json) {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    std::cout << "braid: " << to_string(r.braid) << "\nstrands: " << r.braid.strands() << "\ndelta: " << to_string(r.delta)
              << "\ntorres: " << (r.torres ? "true" : "false") << '\n';
    if (r.axis_form) {
      std::cout << "axis_form: a=" << r.axis_form->a << " f=[";
      for (std::size_t i = 0; i < r.axis_form->f.size(); ++i) std::cout << (i ? ", " : "") << to_string(r.axis_form->f[i]);
      std::cout << "]\n";
    } else {
      std::cout << "axis_form: none (" << r.axis_form_error << ")\n";
    }
    std::cout << "stat: " << r.stat << '\n';
    for (const auto& f : r.flags) std::cout << "flag: " << f << '\n';
  }
  const bool failed = !r.torres || !r.axis_form || !r.axis_form->f_at_one_is_one() ||
                      std::find(r.flags.begin(), r.flags.end(), kFlagSharpness) != r.flags.end();
  return failed ? 1 : 0;
}

int cmd_classify(const Globals& g, const std::string& spec, bool use_mirror) {
  ResolvedLink link = resolve_link(spec);
  if (use_mirror) link.diagram = mirror(link.diagram);
  const ClassificationReport r = classify_by_rank(link.diagram, link.name.value_or(""), g.max_crossings, g.jobs);
  if (g.json) {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    if (!r.name.empty()) std::cout << "name: " << r.name << '\n';
    std::cout << "components: " << r.components << "\ntotal: " << r.total << "\nreduced_total: " << r.reduced
              << "\nparity: " << (r.parity_ok ? "ok" : "violated") << "\nlower bound 2^n: " << (r.lower_bound_ok ? "ok" : "violated")
              << "\nBatson-Seed: " << (r.batson_seed_ok ? (*r.batson_seed_ok ? "ok" : "violated") : "n/a")
              << "\nclass: " << r.match << '\n';
    for (const auto& f : r.flags) std::cout << "note: " << f << '\n';
  }
  const bool failed = !r.parity_ok || !r.lower_bound_ok || (r.batson_seed_ok && !*r.batson_seed_ok) || r.match == kInconsistent;
  return failed ? 1 : 0;
}

int cmd_verify(const Globals& g, bool builtin, const std::string& path) {
  if (builtin == !path.empty()) throw ParseError("verify-table takes exactly one of --builtin or a table path");
  const Dataset data = builtin ? builtin_dataset() : read_dataset_file(path);
  VerifyOptions o;
  o.max_crossings = g.max_crossings;
  o.jobs = g.jobs;
  const TableReport rep = verify_table(data, o);
  if (g.json)
    std::cout << to_json(rep).dump(2) << '\n';
  else
    print_table_report(std::cout, rep);
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology ranks over Z/2, Burau matrices and axis-link Alexander polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  try {
    g.max_crossings = env_max_crossings();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--max-crossings", g.max_crossings, "Refuse diagrams with more crossings (env KHRANK_MAX_CROSSINGS)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string spec;
  bool reduced = false, use_mirror = false, builtin = false;
  std::optional<int> basepoint;
  std::string braid_text, table_path;

  auto* kh = app.add_subcommand("kh", "Bigraded Khovanov ranks of a link");
  kh->add_option("link", spec, "pd:<PD>, braid:<l:w>, axis:<l:w> or name:<entry>")->required();
  kh->add_flag("--reduced", reduced, "Also print reduced ranks");
  kh->add_flag("--mirror", use_mirror, "Mirror the diagram first");
  kh->add_option("--basepoint", basepoint, "Basepoint arc for the reduced theory (default 1)");

  auto* bur = app.add_subcommand("burau", "Reduced Burau matrix of a braid");
  bur->add_option("braid", braid_text, "l:w")->required();

  auto* alex = app.add_subcommand("alex", "Axis-link Alexander polynomial report");
  alex->add_option("braid", braid_text, "l:w")->required();

  auto* cls = app.add_subcommand("classify", "Rank-based classification report");
  cls->add_option("link", spec, "pd:<PD>, braid:<l:w>, axis:<l:w> or name:<entry>")->required();
  cls->add_flag("--mirror", use_mirror, "Mirror the diagram first");

  auto* ver = app.add_subcommand("verify-table", "Check the classification predictions over a link table");
  ver->add_flag("--builtin", builtin, "Use the builtin table");
  ver->add_option("table", table_path, "JSON-lines table file");

  auto* dump = app.add_subcommand("dump-table", "Write the builtin table as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*kh) return cmd_kh(g, spec, reduced, use_mirror, basepoint);
    if (*bur) return cmd_burau(g, braid_text);
    if (*alex) return cmd_alex(g, braid_text);
    if (*cls) return cmd_classify(g, spec, use_mirror);
    if (*ver) return cmd_verify(g, builtin, table_path);
    if (*dump) {
      write_dataset(std::cout, builtin_dataset());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
