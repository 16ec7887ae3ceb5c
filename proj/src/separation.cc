#include "netcut/separation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "netcut/structures.h"

namespace netcut {

void SeparationConfig::validate() const {
  if (top_classes <= 0 || max_aggregations <= 0 || violation_tol <= 0.0 || forest_budget <= 0 ||
      max_rounds <= 0) {
    throw std::invalid_argument("separation parameters must be positive");
  }
  if (!(improvement_stop > 0.0 && improvement_stop < 1.0)) {
    throw std::invalid_argument("improvement_stop must lie in (0,1)");
  }
}

std::vector<Residual> residual_ranking(const Point& p, const BilinearSet& s) {
  if (static_cast<int>(p.y.size()) != s.m()) throw std::invalid_argument("point has wrong y size");
  std::vector<Residual> out;
  for (const Triple& t : s.triples()) {
    const double diff = p.y[t.j - 1] * p.x.at(t.arc) - p.z.at(t.k);
    out.push_back({t.k, diff < 0 ? Sign::kPlus : Sign::kMinus, std::abs(diff)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Residual& a, const Residual& b) { return a.psi > b.psi; });
  return out;
}

namespace {

struct Candidate {
  LinearCut cut;
  double violation;
};

void consider(const BilinearSet& s, const EcrAssignment& a, const Point& p,
              const SeparationConfig& cfg, std::vector<Candidate>& out) {
  AggregatedInequality agg;
  try {
    agg = aggregate(s, a);
  } catch (const ConditionViolated&) {
    return;
  }
  LinearCut cut;
  try {
    cut = relax_most_violated(agg, s, p);
  } catch (const OptionUnavailable&) {
    return;
  }
  const double v = cut.violation(p);
  if (v > cfg.violation_tol) out.push_back({std::move(cut), v});
}

std::vector<ArcId> priority_arcs(const BilinearSet& s, const std::vector<Residual>& classes) {
  std::vector<ArcId> arcs;
  for (const Residual& r : classes) {
    if (r.psi <= 0) continue;
    const ArcId a = s.triple(r.k).arc;
    if (std::find(arcs.begin(), arcs.end(), a) == arcs.end()) arcs.push_back(a);
  }
  return arcs;
}

void separate_class(const Point& p, const BilinearSet& s, int k, Sign sign,
                    const std::vector<ArcId>& priority, const SeparationConfig& cfg,
                    std::vector<Candidate>& out) {
  if (s.m() == 1) {
    TreeOptions opts;
    opts.max_nodes = std::max(1, cfg.max_aggregations - 1);
    opts.seed = cfg.seed;
    opts.feasible_for = sign;
    for (const TreeStructure& ts : enumerate_trees(s, k, opts)) {
      consider(s, tree_to_assignment(s, ts, sign), p, cfg, out);
    }
    return;
  }
  ForestOptions opts;
  opts.budget = cfg.forest_budget;
  opts.priority_arcs = priority;
  for (const ForestStructure& fs : enumerate_forests(s, k, opts)) {
    EcrAssignment a;
    try {
      a = label_forest(s, fs, sign);
    } catch (const LabelConflict&) {
      continue;
    }
    consider(s, a, p, cfg, out);
  }
}

std::vector<LinearCut> finish(std::vector<Candidate> cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.violation > b.violation; });
  std::vector<LinearCut> out;
  for (Candidate& c : cands) {
    bool dup = false;
    for (const LinearCut& o : out) {
      if (o.same_coefficients(c.cut)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(c.cut));
  }
  return out;
}

}  // namespace

std::vector<LinearCut> separate_classes(const Point& p, const BilinearSet& s,
                                        const std::vector<Residual>& classes,
                                        const SeparationConfig& cfg) {
  const std::vector<ArcId> priority = s.m() > 1 ? priority_arcs(s, classes) : std::vector<ArcId>{};
  std::vector<Candidate> cands;
  for (const Residual& r : classes) {
    if (r.psi == 0) {
      separate_class(p, s, r.k, Sign::kPlus, priority, cfg, cands);
      separate_class(p, s, r.k, Sign::kMinus, priority, cfg, cands);
    } else {
      separate_class(p, s, r.k, r.sign, priority, cfg, cands);
    }
  }
  return finish(std::move(cands));
}

std::vector<LinearCut> separate(const Point& p, const BilinearSet& s, const SeparationConfig& cfg) {
  std::vector<Residual> ranking = residual_ranking(p, s);
  if (static_cast<int>(ranking.size()) > cfg.top_classes) ranking.resize(cfg.top_classes);
  return separate_classes(p, s, ranking, cfg);
}

double gap_closed(double bound, double lp, double optimum) {
  const double denom = optimum - lp;
  if (std::abs(denom) <= 1e-9 * std::max(1.0, std::abs(optimum))) return 0.0;
  return (bound - lp) / denom;
}

std::optional<double> LoopReport::gap_after(int round) const {
  if (!optimum || trajectory.empty()) return std::nullopt;
  const int idx = std::clamp(round, 0, static_cast<int>(trajectory.size()) - 1);
  return gap_closed(trajectory[idx], lp_bound, *optimum);
}

Point restrict_point(const RelaxationSet& rs, const VarLayout& vars, const std::vector<double>& values) {
  const BilinearSet& s = rs.set;
  Point p;
  for (int a = 0; a < s.net().num_arcs(); ++a) p.x[s.net().arcs()[a].id] = values[vars.x[a]];
  for (int j = 0; j < s.m(); ++j) p.y.push_back(values[vars.y[rs.y_map[j]]]);
  for (const Triple& t : s.triples()) p.z[t.k] = values[vars.z[rs.z_map[t.k - 1]]];
  return p;
}

std::vector<LpTerm> lift_cut(const RelaxationSet& rs, const Network& net, const VarLayout& vars,
                             const LinearCut& cut) {
  std::vector<LpTerm> terms;
  for (const auto& [arc, c] : cut.q) terms.push_back({vars.x[net.arc_index(arc)], to_double(c)});
  for (std::size_t j = 0; j < cut.r.size(); ++j) {
    if (cut.r[j] != 0) terms.push_back({vars.y[rs.y_map[j]], to_double(cut.r[j])});
  }
  for (const auto& [k, c] : cut.s) terms.push_back({vars.z[rs.z_map[k - 1]], to_double(c)});
  return terms;
}

namespace {

double solve_bound(const LpModel& lp, std::vector<double>* values) {
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalFailure(std::string("relaxation not optimal: ") + to_string(sol.status));
  }
  *values = std::move(sol.values);
  return sol.objective;
}

}  // namespace

LoopReport cut_loop(const BilinearMip& mip, const std::vector<RelaxationSet>& sets,
                    const SeparationConfig& cfg, std::optional<double> optimum) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  LoopReport rep;
  rep.optimum = optimum;
  SetModel model = mccormick(mip);
  std::vector<double> values;
  double bound = solve_bound(model.lp, &values);
  rep.lp_bound = bound;
  rep.trajectory.push_back(bound);

  while (rep.rounds < cfg.max_rounds) {
    struct Pick {
      double psi;
      int set;
      Residual r;
    };
    std::vector<Pick> picks;
    std::vector<Point> points;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      points.push_back(restrict_point(sets[i], model.vars, values));
      for (const Residual& r : residual_ranking(points.back(), sets[i].set)) {
        picks.push_back({r.psi, static_cast<int>(i), r});
      }
    }
    std::stable_sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) {
      return std::tie(b.psi, a.set, a.r.k) < std::tie(a.psi, b.set, b.r.k);
    });
    if (static_cast<int>(picks.size()) > cfg.top_classes) picks.resize(cfg.top_classes);

    int added = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::vector<Residual> classes;
      for (const Pick& pk : picks) {
        if (pk.set == static_cast<int>(i)) classes.push_back(pk.r);
      }
      if (classes.empty()) continue;
      for (LinearCut& cut : separate_classes(points[i], sets[i].set, classes, cfg)) {
        if (cfg.verify_cuts && !validity_check(cut, sets[i].set).valid) {
          ++rep.rejected_cuts;
          continue;
        }
        model.lp.add_row(lift_cut(sets[i], mip.net, model.vars, cut), RowType::kGreaterEqual,
                         to_double(cut.t), "ecr" + std::to_string(rep.total_cuts + added));
        rep.cuts.push_back({static_cast<int>(i), std::move(cut)});
        ++added;
      }
    }
    if (added == 0) break;
    ++rep.rounds;
    rep.cuts_per_round.push_back(added);
    rep.total_cuts += added;
    const double prev = bound;
    bound = solve_bound(model.lp, &values);
    rep.trajectory.push_back(bound);
    if (bound - prev < std::max(cfg.improvement_stop * std::abs(prev), 1e-9)) break;
  }
  rep.final_bound = rep.trajectory.back();
  rep.gap = rep.gap_after(static_cast<int>(rep.trajectory.size()) - 1);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

LoopReport cut_loop(const BilinearSet& s, const SetObjective& objective, const SeparationConfig& cfg) {
  BilinearMip mip;
  mip.net = s.net();
  mip.num_y = s.m();
  mip.triples = s.triples();
  YRow row;
  for (int j = 1; j <= s.m(); ++j) row.coef.push_back({j, 1});
  row.type = RowType::kLessEqual;
  row.rhs = 1;
  if (s.m() > 0) mip.y_rows.push_back(row);
  for (const Arc& a : s.net().arcs()) {
    auto it = objective.x.find(a.id);
    mip.cost_x.push_back(it == objective.x.end() ? 0.0 : it->second);
  }
  mip.cost_y = objective.y;
  mip.cost_y.resize(s.m(), 0.0);
  for (const Triple& t : s.triples()) {
    auto it = objective.z.find(t.k);
    mip.cost_z.push_back(it == objective.z.end() ? 0.0 : it->second);
  }
  mip.offset = objective.constant;

  RelaxationSet rs{s, {}, {}};
  for (int j = 0; j < s.m(); ++j) rs.y_map.push_back(j);
  for (int k = 0; k < s.num_triples(); ++k) rs.z_map.push_back(k);
  std::optional<double> opt;
  HullResult hull = hull_minimum(s, objective);
  if (hull.status == LpStatus::kOptimal) opt = hull.value;
  return cut_loop(mip, {rs}, cfg, opt);
}

std::string loop_csv_header() { return "instance,lp_bound,final_bound,gap,cuts,rounds,time"; }

std::string loop_csv_row(const std::string& id, const LoopReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << id << ',' << r.lp_bound << ',' << r.final_bound << ',';
  if (r.gap) os << *r.gap;
  os << ',' << r.total_cuts << ',' << r.rounds << ',' << r.seconds;
  return os.str();
}

BenchRow bench_instance(const Instance& inst, const std::string& id, const BenchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  BenchRow row;
  row.instance = id;
  MipResult opt = mip_optimum(inst.mip);
  if (opt.status != LpStatus::kOptimal) throw NumericalFailure("instance has no optimum");
  row.mip = opt.value;

  const bool tr = inst.family == "tr";
  row.tree = cut_loop(inst.mip, tr ? tr_relaxations(inst, TrMode::kSingle) : fc_relaxations(inst),
                      opts.cfg, row.mip);
  row.lp = row.tree.lp_bound;
  row.tree_gap = *row.tree.gap;
  const LoopReport* main = &row.tree;
  if (tr) {
    row.forest = cut_loop(inst.mip, tr_relaxations(inst, opts.forest_mode), opts.cfg, row.mip);
    row.forest_gap = *row.forest->gap;
    main = &*row.forest;
  }
  row.root_gap = *main->gap_after(1);
  row.cuts = main->total_cuts;
  row.rounds = main->rounds;

  SetModel rlt = rlt1(inst.mip);
  std::vector<double> values;
  row.rlt = solve_bound(rlt.lp, &values);
  row.rlt_gap = gap_closed(row.rlt, row.lp, row.mip);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string bench_csv_header() {
  return "instance,LP,MIP*,root-gap-proxy,tree-gap,forest-gap,RLT-gap,cuts,rounds,time";
}

std::string bench_csv_row(const BenchRow& row) {
  std::ostringstream os;
  os.precision(10);
  os << row.instance << ',' << row.lp << ',' << row.mip << ',' << row.root_gap << ',' << row.tree_gap
     << ',';
  if (row.forest_gap) os << *row.forest_gap;
  os << ',' << row.rlt_gap << ',' << row.cuts << ',' << row.rounds << ',';
  os.precision(4);
  os << std::fixed << row.seconds;
  return os.str();
}

BenchRow bench_average(const std::vector<BenchRow>& rows) {
  BenchRow avg;
  avg.instance = "avg";
  if (rows.empty()) return avg;
  const double n = static_cast<double>(rows.size());
  double cuts = 0, rounds = 0;
  bool forest = true;
  double forest_sum = 0;
  for (const BenchRow& r : rows) {
    avg.lp += r.lp / n;
    avg.mip += r.mip / n;
    avg.root_gap += r.root_gap / n;
    avg.tree_gap += r.tree_gap / n;
    avg.rlt_gap += r.rlt_gap / n;
    avg.seconds += r.seconds / n;
    cuts += r.cuts;
    rounds += r.rounds;
    if (r.forest_gap) {
      forest_sum += *r.forest_gap;
    } else {
      forest = false;
    }
  }
  if (forest) avg.forest_gap = forest_sum / n;
  avg.cuts = static_cast<int>(std::lround(cuts / n));
  avg.rounds = static_cast<int>(std::lround(rounds / n));
  return avg;
}

}  // namespace netcut
