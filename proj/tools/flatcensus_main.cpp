#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatcensus/asymptotics.hpp"
#include "flatcensus/census.hpp"
#include "flatcensus/curve_type.hpp"
#include "flatcensus/dt_lattice.hpp"
#include "flatcensus/foliation.hpp"
#include "flatcensus/json_io.hpp"
#include "flatcensus/rational.hpp"
#include "flatcensus/tiling.hpp"

namespace {

using namespace flatcensus;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << data;
}

int env_workers(int flag_value) {
  const char* env = std::getenv("FLATCENSUS_WORKERS");
  if (!env || !*env) return flag_value;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (!end || *end != '\0' || v < 1 || v > 4096)
    throw std::invalid_argument("bad FLATCENSUS_WORKERS value");
  return int(v);
}

std::string resolve_type_key(const std::string& s, int g, int n) {
  if (s == "nonsep" || s == "sep") {
    if (g != 2 || n != 0)
      throw std::invalid_argument("type aliases nonsep/sep are genus-2 closed only");
    return s == "nonsep" ? nonseparating_weight1_key() : separating_weight1_key();
  }
  return s;
}

struct CensusArgs {
  int g = 0, n = 0, max_area = 0, workers = 1;
  uint64_t max_nodes = 0;
  Mode mode = Mode::pruned;
  StructureFilter filter = StructureFilter::none;
  std::string h_type, out, manifest, checkpoint_dir;
};

int cmd_census(const CensusArgs& a) {
  CensusSpec spec;
  spec.g = a.g;
  spec.n = a.n;
  spec.max_area = a.max_area;
  spec.mode = a.mode;
  spec.filter = a.filter;
  if (!a.h_type.empty()) spec.h_type_filter = resolve_type_key(a.h_type, a.g, a.n);
  CensusOptions opts;
  opts.workers = env_workers(a.workers);
  opts.max_nodes = a.max_nodes;
  opts.checkpoint_dir = a.checkpoint_dir;
  CensusResult res = run_census(spec, opts);
  write_output(a.out, res.table.to_csv());
  if (!a.manifest.empty()) write_output(a.manifest, manifest_json(res));
  return 0;
}

std::vector<int> choose_marking(const GluingTable& t, const ConeData& cone) {
  std::vector<int> marked;
  for (int k = 0; k < cone.num_classes(); ++k)
    if (cone.angle_halfpi(k) == 2) marked.push_back(cone.class_ids[k]);
  int g = genus(t);
  for (int k = 0; k < cone.num_classes() && 2 - 2 * g - int(marked.size()) >= 0; ++k) {
    int id = cone.class_ids[k];
    if (std::find(marked.begin(), marked.end(), id) == marked.end()) marked.push_back(id);
  }
  if (2 - 2 * g - int(marked.size()) >= 0)
    throw std::invalid_argument("table admits no valid marking (too few vertex classes)");
  std::sort(marked.begin(), marked.end());
  return marked;
}

int cmd_classify(const std::string& in_path) {
  std::string text = read_file(in_path);
  GluingTable t = table_from_json(text);
  auto diag = validate_table(t);
  if (!diag.ok || !diag.connected) {
    std::string msg = "invalid table";
    for (const auto& s : diag.issues) msg += "; " + s;
    throw std::invalid_argument(msg);
  }
  ConeData cone = corner_orbits(t);
  std::vector<int> marked;
  auto j = nlohmann::json::parse(text);
  bool chosen = false;
  if (j.contains("marked")) {
    marked = j["marked"].get<std::vector<int>>();
    std::sort(marked.begin(), marked.end());
  } else {
    marked = choose_marking(t, cone);
    chosen = true;
  }
  MarkedTiling mt(t, marked);

  std::ostringstream out;
  out << "area: " << t.n_squares << "\n";
  out << "genus: " << mt.genus << "\n";
  out << "vertices: " << cone.num_classes() << "\n";
  for (int k = 0; k < cone.num_classes(); ++k) {
    int id = cone.class_ids[k];
    out << "vertex id=" << id << " angle_halfpi=" << cone.angle_halfpi(k)
        << (mt.is_marked_class(k) ? " marked" : "") << "\n";
  }
  out << "marked" << (chosen ? " (auto)" : "") << ":";
  for (int id : marked) out << " " << id;
  out << "\n";
  for (Direction dir : {Direction::horizontal, Direction::vertical}) {
    const char* name = dir == Direction::horizontal ? "h" : "v";
    auto d = decompose(mt, dir);
    out << name << "_cylinders:";
    for (const auto& cyl : d.cylinders)
      out << " (c=" << cyl.circumference << ",h=" << cyl.height << ")";
    out << "\n";
    out << name << "_type: " << multicurve_type(mt, dir).key << "\n";
  }
  AutGroup aut = automorphisms(mt);
  out << "aut_order: " << aut.order() << "\n";
  out << "aut_has_flip: " << (aut.has_flip() ? "true" : "false") << "\n";
  std::cout << out.str();
  return 0;
}

std::vector<std::pair<std::string, AsymConstant>> predictions_for(int g, int n) {
  std::vector<std::pair<std::string, AsymConstant>> all;
  all.emplace_back("epsilon", AsymConstant{make_rat(epsilon(g, n), 1), 0,
                                           AsymConstant::Provenance::exact});
  all.emplace_back("r", r_const(g, n));
  all.emplace_back("nu", nu_scaling(g, n));
  if (g == 2 && n == 0) {
    AsymConstant ns = freq_genus2(false), sp = freq_genus2(true);
    all.emplace_back("freq-nonsep", ns);
    all.emplace_back("freq-sep", sp);
    all.emplace_back("thm12-nonsep", thm12_constant(ns, 2, 0));
    all.emplace_back("thm12-sep", thm12_constant(sp, 2, 0));
    all.emplace_back("ratio-sep-nonsep",
                     AsymConstant{make_rat(1, 48), 0, AsymConstant::Provenance::exact});
    all.emplace_back("ratio-sepsep-nonsepnonsep",
                     AsymConstant{make_rat(1, 2304), 0, AsymConstant::Provenance::exact});
  }
  return all;
}

int cmd_predict(int g, int n, const std::vector<std::string>& names, const std::string& out) {
  auto all = predictions_for(g, n);
  std::string csv = "name,num,den,pi_power,provenance\n";
  if (names.empty()) {
    for (const auto& [name, c] : all) csv += predict_csv_row(name, c);
  } else {
    for (const auto& want : names) {
      auto it = std::find_if(all.begin(), all.end(),
                             [&](const auto& p) { return p.first == want; });
      if (it == all.end()) throw std::invalid_argument("unknown constant: " + want);
      csv += predict_csv_row(it->first, it->second);
    }
  }
  write_output(out, csv);
  return 0;
}

struct CompareArgs {
  std::string census_path, h_type, quantity = "s_over_L_pow", predicted, out;
  int g = 0, n = 0;
  bool genus2 = false;
};

int cmd_compare(const CompareArgs& a) {
  CountTable ct;
  ct.spec.g = a.g;
  ct.spec.n = a.n;
  std::string text = read_file(a.census_path);
  for (auto& [k, w] : parse_census_csv(text)) {
    ct.add(k, w);
    ct.spec.max_area = std::max(ct.spec.max_area, k.area);
  }
  std::string csv = "L,quantity,empirical_num,empirical_den,predicted_num,predicted_den,ratio\n";
  if (a.genus2) {
    if (a.g != 2 || a.n != 0) throw std::invalid_argument("--genus2 needs --g 2 --n 0");
    std::string ns = nonseparating_weight1_key(), sp = separating_weight1_key();
    csv += compare_report(ct, "thm12-nonsep", ns, std::nullopt,
                          thm12_constant(freq_genus2(false), 2, 0).rational);
    csv += compare_report(ct, "thm12-sep", sp, std::nullopt,
                          thm12_constant(freq_genus2(true), 2, 0).rational);
    csv += compare_ratio_report(ct, "sep-over-nonsep", sp, ns, make_rat(1, 48));
  } else {
    if (a.h_type.empty() || a.predicted.empty())
      throw std::invalid_argument("compare needs --h-type and --predicted (or --genus2)");
    csv += compare_report(ct, a.quantity, resolve_type_key(a.h_type, a.g, a.n), std::nullopt,
                          parse_rat(a.predicted));
  }
  write_output(a.out, csv);
  return 0;
}

int cmd_dt_count(const std::string& pants_path, long L, bool all, const std::string& out) {
  PantsDecomposition pd = pants_from_json(read_file(pants_path));
  std::vector<long> ls;
  if (all)
    for (long l = 1; l <= L; ++l) ls.push_back(l);
  else
    ls.push_back(L);
  write_output(out, dt_count_csv(pd, ls));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact census of square-tiled half-translation surfaces"};
  app.require_subcommand(1);

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "enumerate surfaces and emit bucket counts");
  census->add_option("--g", ca.g, "genus")->required();
  census->add_option("--n", ca.n, "marked points")->required();
  census->add_option("--max-area", ca.max_area, "largest square count")->required();
  census->add_option("--mode", ca.mode, "enumeration mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Mode>{{"naive", Mode::naive}, {"pruned", Mode::pruned}}));
  census->add_option("--filter", ca.filter, "horizontal structure filter")
      ->transform(CLI::CheckedTransformer(std::map<std::string, StructureFilter>{
          {"none", StructureFilter::none},
          {"one-cylinder", StructureFilter::one_cylinder},
          {"one-cylinder-h1", StructureFilter::one_cylinder_h1}}));
  census->add_option("--h-type", ca.h_type, "keep only this horizontal type (or nonsep/sep)");
  census->add_option("--workers", ca.workers, "parallel shard workers");
  census->add_option("--max-nodes", ca.max_nodes, "enumeration node budget (0 = unlimited)");
  census->add_option("--checkpoint-dir", ca.checkpoint_dir, "per-shard resume directory");
  census->add_option("--out", ca.out, "census CSV path (default stdout)");
  census->add_option("--manifest", ca.manifest, "manifest JSON path");

  std::string classify_in;
  auto* classify = app.add_subcommand("classify", "report the structure of one table");
  classify->add_option("--in", classify_in, "table JSON path ('-' = stdin)")->required();

  int pg = 0, pn = 0;
  std::vector<std::string> pred_names;
  std::string pred_out;
  auto* predict = app.add_subcommand("predict", "emit closed-form constants");
  predict->add_option("--g", pg, "genus")->required();
  predict->add_option("--n", pn, "marked points")->required();
  predict->add_option("names", pred_names, "constant names (default: all)");
  predict->add_option("--out", pred_out, "output path (default stdout)");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "census vs predicted constants");
  compare->add_option("--census", cmp.census_path, "census CSV path")->required();
  compare->add_option("--g", cmp.g, "genus")->required();
  compare->add_option("--n", cmp.n, "marked points")->required();
  compare->add_flag("--genus2", cmp.genus2, "standard genus-2 closed report");
  compare->add_option("--h-type", cmp.h_type, "horizontal type key (or nonsep/sep)");
  compare->add_option("--quantity", cmp.quantity, "row label");
  compare->add_option("--predicted", cmp.predicted, "predicted constant, as num/den");
  compare->add_option("--out", cmp.out, "output path (default stdout)");

  std::string pants_path, dt_out;
  long dt_L = 0;
  bool dt_all = false;
  auto* dt = app.add_subcommand("dt-count", "Dehn-Thurston lattice point counts");
  dt->add_option("--pants", pants_path, "pants decomposition JSON")->required();
  dt->add_option("--L", dt_L, "length bound")->required()->check(CLI::PositiveNumber);
  dt->add_flag("--all", dt_all, "emit every L' <= L");
  dt->add_option("--out", dt_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*census) return cmd_census(ca);
    if (*classify) return cmd_classify(classify_in);
    if (*predict) return cmd_predict(pg, pn, pred_names, pred_out);
    if (*compare) return cmd_compare(cmp);
    if (*dt) return cmd_dt_count(pants_path, dt_L, dt_all, dt_out);
  } catch (const ResourceCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
