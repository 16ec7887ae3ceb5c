#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netcut/instances.h"
#include "netcut/json_io.h"
#include "netcut/lp.h"
#include "netcut/separation.h"
#include "netcut/verify.h"

using namespace netcut;

namespace {

constexpr int kExitVerifyFailed = 2;
constexpr int kExitUsage = 1;

struct Settings {
  SeparationConfig cfg;
  std::string forest_mode = "pairs_plus_free";
};

std::vector<RelaxationSet> relaxations_for(const Instance& inst, const std::string& mode,
                                           const Settings& st) {
  if (mode == "tree") {
    return inst.family == "tr" ? tr_relaxations(inst, TrMode::kSingle) : single_relaxations(inst.mip);
  }
  if (mode == "forest") {
    if (inst.family != "tr") throw std::invalid_argument("forest mode needs a tr instance");
    return tr_relaxations(inst, tr_mode_from_string(st.forest_mode));
  }
  return tr_relaxations(inst, tr_mode_from_string(mode));
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run_gen(const std::string& family, int nodes, double frac, int services, std::uint64_t seed,
            const std::string& out) {
  Instance inst;
  if (family == "fc") {
    inst = gen_fc(seed, nodes, frac);
  } else if (family == "tr") {
    inst = gen_tr(seed, nodes, services);
  } else {
    std::cerr << "unknown family " << family << '\n';
    return kExitUsage;
  }
  write_json_file(out, to_json(inst));
  std::cout << "wrote " << out << " (" << inst.mip.net.num_arcs() << " arcs, " << inst.mip.num_y
            << " y, " << inst.mip.triples.size() << " products)\n";
  return 0;
}

int run_cuts(const std::string& instance_path, const std::string& out, const std::string& mode,
             int set_index, int class_k, const std::string& sign, const Settings& st) {
  Instance inst = instance_from_json(read_json_file(instance_path));
  const std::vector<RelaxationSet> sets = relaxations_for(inst, mode, st);
  std::vector<InstanceCut> cuts;
  Json report = Json::object();
  if (class_k > 0) {
    if (set_index < 0 || set_index >= static_cast<int>(sets.size())) {
      std::cerr << "--set out of range (0.." << sets.size() << ")\n";
      return kExitUsage;
    }
    const RelaxationSet& rs = sets[set_index];
    if (class_k > rs.set.num_triples()) {
      std::cerr << "--class out of range (1.." << rs.set.num_triples() << ")\n";
      return kExitUsage;
    }
    SetModel model = mccormick(inst.mip);
    LpSolution sol = solve(model.lp);
    if (sol.status != LpStatus::kOptimal) throw NumericalFailure("McCormick relaxation not optimal");
    Point p = restrict_point(rs, model.vars, sol.values);
    Residual r{class_k, Sign::kPlus, 0.0};
    for (const Residual& e : residual_ranking(p, rs.set)) {
      if (e.k == class_k) r = e;
    }
    if (!sign.empty()) {
      r.sign = sign == "+" ? Sign::kPlus : Sign::kMinus;
      if (r.psi == 0) r.psi = -1;  // a forced sign is not doubled
    }
    for (LinearCut& c : separate_classes(p, rs.set, {r}, st.cfg)) cuts.push_back({set_index, std::move(c)});
    report = {{"lp_bound", sol.objective}};
  } else {
    LoopReport rep = cut_loop(inst.mip, sets, st.cfg);
    cuts = rep.cuts;
    report = {{"lp_bound", rep.lp_bound}, {"final_bound", rep.final_bound}, {"rounds", rep.rounds},
              {"trajectory", rep.trajectory}, {"cuts_per_round", rep.cuts_per_round}};
  }

  Json arr = Json::array();
  for (std::size_t n = 0; n < cuts.size(); ++n) {
    const InstanceCut& ic = cuts[n];
    arr.push_back(to_json(ic.cut, ic.set_index));
    std::cout << "cut " << n << " [set " << ic.set_index << "]: "
              << to_string(ic.cut, sets[ic.set_index].set.net()) << '\n';
  }
  Json doc = {{"instance", instance_path}, {"mode", mode}, {"report", report}, {"cuts", arr}};
  write_json_file(out, doc);
  std::cout << cuts.size() << " cuts written to " << out << '\n';
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& cuts_path, const Settings& st) {
  Instance inst = instance_from_json(read_json_file(instance_path));
  Json doc = read_json_file(cuts_path);
  const std::string mode = doc.value("mode", std::string("tree"));
  const std::vector<RelaxationSet> sets = relaxations_for(inst, mode, st);
  int invalid = 0, n = 0;
  for (const Json& jc : doc.at("cuts")) {
    int set_index = -1;
    LinearCut cut = cut_from_json(jc, &set_index);
    if (set_index < 0 || set_index >= static_cast<int>(sets.size())) {
      std::cerr << "cut " << n << ": no relaxation set " << set_index << '\n';
      return kExitUsage;
    }
    ValidityResult vr = validity_check(cut, sets[set_index].set);
    if (vr.valid) {
      std::cout << "cut " << n << ": valid (min slack " << format_number(vr.min_slack) << ")\n";
    } else {
      ++invalid;
      std::cout << "cut " << n << ": INVALID (slack " << format_number(vr.min_slack) << " at disjunct "
                << vr.worst_disjunct << ")";
      if (vr.certificate) std::cout << " certificate " << to_json(*vr.certificate).dump();
      std::cout << '\n';
    }
    ++n;
  }
  std::cout << n - invalid << '/' << n << " cuts valid\n";
  return invalid == 0 ? 0 : kExitVerifyFailed;
}

struct ManifestEntry {
  std::string family;
  int nodes;
  double param;
  std::uint64_t seed;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ManifestEntry> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("family", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string family, nodes, param, seed;
    if (!std::getline(ss, family, ',') || !std::getline(ss, nodes, ',') ||
        !std::getline(ss, param, ',') || !std::getline(ss, seed, ',')) {
      throw std::runtime_error("bad manifest line: " + line);
    }
    out.push_back({family, std::stoi(nodes), std::stod(param), std::stoull(seed)});
  }
  return out;
}

int run_bench(const std::string& manifest, const std::string& out, const Settings& st) {
  BenchOptions opts;
  opts.cfg = st.cfg;
  opts.forest_mode = tr_mode_from_string(st.forest_mode);
  std::vector<BenchRow> rows;
  for (const ManifestEntry& e : read_manifest(manifest)) {
    Instance inst = e.family == "tr" ? gen_tr(e.seed, e.nodes, static_cast<int>(e.param))
                                     : gen_fc(e.seed, e.nodes, e.param);
    std::ostringstream id;
    id << e.family << "-n" << e.nodes << "-p" << e.param << "-s" << e.seed;
    rows.push_back(bench_instance(inst, id.str(), opts));
    std::cerr << bench_csv_row(rows.back()) << '\n';
  }
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "# netcut bench schema 1\n" << bench_csv_header() << '\n';
  for (const BenchRow& r : rows) os << bench_csv_row(r) << '\n';
  os << bench_csv_row(bench_average(rows)) << '\n';
  return 0;
}

int run_lp_dump(const std::string& instance_path, const std::string& relaxation, const std::string& out) {
  Instance inst = instance_from_json(read_json_file(instance_path));
  SetModel model;
  if (relaxation == "mccormick") {
    model = mccormick(inst.mip);
  } else if (relaxation == "rlt1") {
    model = rlt1(inst.mip);
  } else {
    std::cerr << "unknown relaxation " << relaxation << '\n';
    return kExitUsage;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write " + out);
  model.lp.write(os);
  return 0;
}

int run_lp_solve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  LpModel lp = LpModel::read(in);
  LpSolution sol = solve(lp);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", sol.objective);
  std::cout << "status " << to_string(sol.status) << '\n';
  if (sol.status == LpStatus::kOptimal) std::cout << "objective " << buf << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut generation for bilinear network-flow relaxations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags win");

  Settings st;
  app.add_option("--top-classes,--top_classes", st.cfg.top_classes, "classes tried per round")
      ->capture_default_str();
  app.add_option("--max-aggregations,--max_aggregations", st.cfg.max_aggregations)->capture_default_str();
  app.add_option("--improvement-stop,--improvement_stop", st.cfg.improvement_stop)->capture_default_str();
  app.add_option("--violation-tol,--violation_tol", st.cfg.violation_tol)->capture_default_str();
  app.add_option("--forest-budget,--forest_budget", st.cfg.forest_budget)->capture_default_str();
  app.add_option("--max-rounds,--max_rounds", st.cfg.max_rounds)->capture_default_str();
  app.add_option("--sep-seed,--sep_seed", st.cfg.seed, "seed for sampled partitions")->capture_default_str();
  app.add_flag("--verify-cuts,--verify_cuts", st.cfg.verify_cuts, "re-verify every cut before adding it");
  app.add_option("--forest-mode,--forest_mode", st.forest_mode, "relaxation sets of the forest loop")
      ->check(CLI::IsMember({"conflict_pair", "pairs_plus_free", "pairs_plus_all"}))
      ->capture_default_str();

  std::string family, out, instance, cuts_file, manifest, mode = "tree", sign, relaxation = "mccormick",
                                                                    lp_file;
  int nodes = 20, services = 8, set_index = 0, class_k = 0;
  double frac = 0.2;
  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", family)->required()->check(CLI::IsMember({"fc", "tr"}));
  gen->add_option("--nodes", nodes)->capture_default_str();
  gen->add_option("--frac", frac, "break fraction (fc)")->capture_default_str();
  gen->add_option("--services", services, "service count (tr)")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out)->required();

  auto* cuts = app.add_subcommand("cuts", "run the cut loop, or one class with --class");
  cuts->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
  cuts->add_option("--out", out)->required();
  cuts->add_option("--mode", mode, "tree, forest or a relaxation mode name")->capture_default_str();
  cuts->add_option("--set", set_index, "relaxation set for --class")->capture_default_str();
  cuts->add_option("--class", class_k, "triple k of the base equality");
  cuts->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));

  auto* verify = app.add_subcommand("verify", "check cuts with the per-disjunct oracle");
  verify->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
  verify->add_option("--cuts", cuts_file)->required()->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "benchmark table from a manifest");
  bench->add_option("--manifest", manifest, "CSV: family,nodes,param,seed")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", out, "CSV path (stdout when omitted)");

  auto* lp = app.add_subcommand("lp", "LP relaxations in the plain-text dump format");
  lp->require_subcommand(1);
  auto* dump = lp->add_subcommand("dump", "write a relaxation of an instance");
  dump->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
  dump->add_option("--relaxation", relaxation)->check(CLI::IsMember({"mccormick", "rlt1"}))->capture_default_str();
  dump->add_option("--out", out)->required();
  auto* lpsolve = lp->add_subcommand("solve", "solve a dumped LP");
  lpsolve->add_option("--lp", lp_file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    st.cfg.validate();
    if (*gen) return run_gen(family, nodes, frac, services, seed, out);
    if (*cuts) return run_cuts(instance, out, mode, set_index, class_k, sign, st);
    if (*verify) return run_verify(instance, cuts_file, st);
    if (*bench) return run_bench(manifest, out, st);
    if (*dump) return run_lp_dump(instance, relaxation, out);
    if (*lpsolve) return run_lp_solve(lp_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
