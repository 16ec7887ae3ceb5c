// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "netcut/ecr.h"
#include "netcut/separation.h"
#include "netcut/structures.h"
#include "netcut/verify.h"

using namespace netcut;
using namespace netcut::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " [over time limit " + std::to_string(limit_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
  std::fflush(stdout);
}

ParamExpr f(NodeId v) { return ParamExpr::supply(v); }

Outcome criterion1() {
  BilinearSet s = full_set(spiked_cycle(), 1);
  EcrAssignment a;
  a.class_k = class_of(s, 15, 1);
  a.sign = Sign::kPlus;
  a.I = {{minus(8), minus(2)}};
  a.Ibar = {plus(4), plus(1), plus(6)};
  AggregatedInequality agg = aggregate(s, a);
  // -z - y x23 - y x43 + (f8+f2+f1+f4+f6) y + x15 - x21 + x43 - x84 + x62 - f1 - f4 - f6 >= 0
  const bool match =
      agg.bilinear == std::map<BilinearKey, Rational>{{{23, 1}, -1}, {{43, 1}, -1}} &&
      agg.x == std::map<ArcId, Rational>{{15, 1}, {21, -1}, {43, 1}, {84, -1}, {62, 1}} &&
      agg.y.size() == 1 && agg.y[0] == f(8) + f(2) + f(1) + f(4) + f(6) &&
      agg.z == std::map<int, Rational>{{a.class_k, -1}} && agg.constant == -(f(1) + f(4) + f(6));
  const std::size_t n = relax_all(agg, s).size();
  return {match && n == 9, "inequality " + std::string(match ? "matches" : "differs: " + to_string(agg, s.net())) +
                               ", " + std::to_string(n) + " cuts"};
}

Outcome criterion2() {
  BilinearSet s = full_set(spiked_cycle(), 2);
  ForestStructure fs;
  fs.class_k = class_of(s, 15, 1);
  fs.forest_nodes = {{1, 2, 6, 8}, {1, 4}};
  fs.connection_nodes = {3};
  fs.connection_arcs = {84};
  EcrAssignment printed;
  printed.class_k = fs.class_k;
  printed.sign = Sign::kPlus;
  printed.I = {{minus(1), minus(2), minus(6), minus(8)}, {minus(1), minus(4)}};
  printed.Ibar = {plus(3)};
  printed.Jbar = {84};

  EcrAssignment got = label_forest(s, fs, Sign::kPlus);
  const bool same = got == printed;
  std::size_t n = relax_all(aggregate(s, got), s).size();
  std::string printed_agg;
  try {
    printed_agg = std::to_string(relax_all(aggregate(s, printed), s).size()) + " cuts";
  } catch (const ConditionViolated& e) {
    printed_agg = std::string("rejected, ") + e.what();
  }
  std::ostringstream os;
  os << "label_forest gives " << to_string(got, s.net()) << " with " << n << " cuts; expected "
     << to_string(printed, s.net()) << " (that assignment aggregates as: " << printed_agg << ")";
  return {same && n == 128, os.str()};
}

Outcome criterion3() {
  BilinearSet s2 = full_set(spiked_cycle(), 2);
  EcrAssignment ex2;
  ex2.class_k = class_of(s2, 84, 1);
  ex2.sign = Sign::kPlus;
  ex2.I = {{plus(4), plus(3)}, {minus(2)}};
  ex2.Ibar = {plus(1)};
  ex2.J = {41};
  ex2.Jbar = {23};
  std::string d2;
  bool rej2 = false;
  try {
    AggregatedInequality agg = aggregate(s2, ex2);
    d2 = "accepted (" + std::to_string(agg.cancel_count) + " cancellations for " +
         std::to_string(ex2.size()) + " constraints)";
  } catch (const ConditionViolated& e) {
    rej2 = true;
    d2 = to_string(e.which());
  }

  ForestStructure fs;
  fs.class_k = class_of(s2, 15, 1);
  fs.forest_nodes = {{1, 2}, {2, 6}};
  fs.connection_nodes = {6};
  int rejected = 0, consistent = 0, by_cancellation = 0;
  for (int mask = 0; mask < 32; ++mask) {
    auto sg = [&](int b) { return (mask >> b) & 1 ? Sign::kPlus : Sign::kMinus; };
    EcrAssignment a;
    a.class_k = fs.class_k;
    a.sign = Sign::kPlus;
    a.I = {{{1, sg(0)}, {2, sg(1)}}, {{2, sg(2)}, {6, sg(3)}}};
    a.Ibar = {{6, sg(4)}};
    const bool one_sign = sg(1) == sg(2) && sg(3) == sg(4);
    consistent += one_sign;
    try {
      aggregate(s2, a);
    } catch (const ConditionViolated& e) {
      ++rejected;
      if (one_sign && (e.which() == Condition::kC1 || e.which() == Condition::kC2)) ++by_cancellation;
    }
  }
  bool label_rejected = false;
  try {
    aggregate(s2, label_forest(s2, fs, Sign::kPlus));
  } catch (const ConditionViolated&) {
    label_rejected = true;
  } catch (const LabelConflict&) {
    label_rejected = true;
  }
  const ForestCheck check = validate_forest(s2, fs);
  std::ostringstream os;
  os << "weight-two assignment with unit weights: " << d2 << "; forest structure "
     << (check.ok() ? "passes validation" : std::string("fails validation (") + to_string(check.failed) + ")")
     << ", " << rejected << "/32 labellings rejected ("
     << by_cancellation << "/" << consistent << " sign-consistent ones by C1/C2)";
  return {rej2 && rejected == 32 && by_cancellation == consistent && label_rejected, os.str()};
}

// Random valid assignment pool: trees for m = 1, labelled forests for m = 2.
struct Pooled {
  BilinearSet set;
  EcrAssignment assignment;
};

std::vector<Pooled> assignment_pool(std::mt19937_64& rng, int m, int networks, int per_network) {
  std::vector<Pooled> out;
  for (int n = 0; n < networks; ++n) {
    const int nodes = std::uniform_int_distribution<int>(3, 12)(rng);
    const RowSense sense = n % 3 == 0 ? RowSense::kMinusOnly : RowSense::kBoth;
    Network net = random_network(rng, nodes, std::uniform_int_distribution<int>(0, 4)(rng), sense);
    BilinearSet s = full_set(net, m);
    std::vector<EcrAssignment> cands;
    for (const Triple& t : s.triples()) {
      for (Sign sg : {Sign::kPlus, Sign::kMinus}) {
        if (m == 1) {
          TreeOptions o;
          o.max_nodes = 4;
          o.feasible_for = sg;
          for (const TreeStructure& ts : enumerate_trees(s, t.k, o)) cands.push_back(tree_to_assignment(s, ts, sg));
        } else {
          ForestOptions o;
          o.budget = 2;
          o.max_structures = 200;
          for (const ForestStructure& fs : enumerate_forests(s, t.k, o)) {
            try {
              EcrAssignment a = label_forest(s, fs, sg);
              aggregate(s, a);
              cands.push_back(a);
            } catch (const LabelConflict&) {
            } catch (const ConditionViolated&) {
            }
          }
        }
      }
    }
    std::shuffle(cands.begin(), cands.end(), rng);
    if (static_cast<int>(cands.size()) > per_network) cands.resize(per_network);
    for (EcrAssignment& a : cands) out.push_back({s, std::move(a)});
  }
  return out;
}

std::vector<RelaxChoice> random_choices(std::mt19937_64& rng, const AggregatedInequality& agg,
                                        const BilinearSet& s) {
  std::vector<RelaxChoice> ch;
  for (const auto& [key, c] : agg.bilinear) {
    auto opts = relax_options(s, key, c);
    ch.push_back({key, opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)]});
  }
  return ch;
}

Outcome criterion4() {
  std::mt19937_64 rng(2024);
  int cuts = 0, tree_cuts = 0, forest_cuts = 0, invalid = 0, disagree = 0;
  double min_slack = kInfinity;
  for (int m : {1, 2}) {
    std::vector<Pooled> pool = assignment_pool(rng, m, 40, 30);
    for (const Pooled& p : pool) {
      AggregatedInequality agg = aggregate(p.set, p.assignment);
      for (int rep = 0; rep < 2; ++rep) {
        LinearCut cut = relax(agg, p.set, random_choices(rng, agg, p.set));
        ValidityResult a = validity_check(cut, p.set);
        ValidityResult b = validity_check_extended(cut, p.set);
        ++cuts;
        (m == 1 ? tree_cuts : forest_cuts)++;
        if (a.min_slack == kInfinity) continue;  // empty Xi
        min_slack = std::min({min_slack, a.min_slack, b.min_slack});
        if (!a.valid || !b.valid) ++invalid;
        if (std::abs(a.min_slack - b.min_slack) > 1e-6 * std::max(1.0, std::abs(a.min_slack))) ++disagree;
      }
    }
  }
  std::ostringstream os;
  os << cuts << " cuts (" << tree_cuts << " tree, " << forest_cuts << " forest), " << invalid
     << " invalid, oracle disagreements " << disagree << ", min slack " << min_slack;
  return {cuts >= 2000 && tree_cuts > 0 && forest_cuts > 0 && invalid == 0 && disagree == 0 && min_slack >= -1e-6,
          os.str()};
}

// Every EC&R assignment reachable from a tree of any size, plus the empty one.
std::vector<AggregatedInequality> all_tree_aggregations(const BilinearSet& s) {
  std::vector<AggregatedInequality> out;
  for (const Triple& t : s.triples()) {
    for (Sign sg : {Sign::kPlus, Sign::kMinus}) {
      EcrAssignment empty;
      empty.class_k = t.k;
      empty.sign = sg;
      empty.I.resize(1);
      out.push_back(aggregate(s, empty));
      TreeOptions o;
      o.max_nodes = s.net().num_nodes();
      o.feasible_for = sg;
      for (const TreeStructure& ts : enumerate_trees(s, t.k, o)) {
        try {
          out.push_back(aggregate(s, tree_to_assignment(s, ts, sg)));
        } catch (const ConditionViolated&) {
        }
      }
    }
  }
  return out;
}

Outcome criterion5() {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  int instances = 0, objectives = 0, mismatches = 0;
  double worst = 0.0;
  long cuts_added = 0;
  while (instances < 20) {
    const int nodes = std::uniform_int_distribution<int>(3, 6)(rng);
    Network net = random_network(rng, nodes, std::uniform_int_distribution<int>(0, 2)(rng));
    BilinearSet s = full_set(net, 1);
    std::vector<AggregatedInequality> family = all_tree_aggregations(s);
    ++instances;
    for (int o = 0; o < 20; ++o) {
      SetObjective obj;
      for (const Arc& a : net.arcs()) obj.x[a.id] = coef(rng);
      obj.y = {coef(rng)};
      for (const Triple& t : s.triples()) obj.z[t.k] = coef(rng);
      HullResult hull = hull_minimum(s, obj);
      if (hull.status != LpStatus::kOptimal) continue;

      // Cutting planes with exact separation over the whole family.
      SetModel mc = mccormick(s);
      for (const auto& [a, v] : obj.x) mc.lp.set_objective(mc.vars.x[net.arc_index(a)], v);
      mc.lp.set_objective(mc.vars.y[0], obj.y[0]);
      for (const auto& [k, v] : obj.z) mc.lp.set_objective(mc.vars.z[k - 1], v);
      double bound = 0.0;
      for (int round = 0; round < 200; ++round) {
        LpSolution sol = solve(mc.lp);
        if (sol.status != LpStatus::kOptimal) throw NumericalFailure("cut LP not optimal");
        bound = sol.objective;
        Point p = point_from_values(s, mc.vars, sol.values);
        int added = 0;
        for (const AggregatedInequality& agg : family) {
          LinearCut c = relax_most_violated(agg, s, p);
          if (c.violation(p) <= 1e-9) continue;
          std::vector<LpTerm> row;
          for (const auto& [a, v] : c.q) row.push_back({mc.vars.x[net.arc_index(a)], to_double(v)});
          row.push_back({mc.vars.y[0], to_double(c.r[0])});
          for (const auto& [k, v] : c.s) row.push_back({mc.vars.z[k - 1], to_double(v)});
          mc.lp.add_row(row, RowType::kGreaterEqual, to_double(c.t));
          ++added;
        }
        cuts_added += added;
        if (added == 0) break;
      }
      ++objectives;
      const double err = std::abs(bound - hull.value) / std::max(1.0, std::abs(hull.value));
      worst = std::max(worst, err);
      if (err > 1e-6) ++mismatches;
    }
  }
  std::ostringstream os;
  os << instances << " instances, " << objectives << " objectives, " << mismatches
     << " mismatches, worst relative error " << worst << ", " << cuts_added << " cuts added";
  return {instances >= 20 && objectives >= 20 * 20 && mismatches == 0, os.str()};
}

Outcome criterion6() {
  std::mt19937_64 rng(66);
  std::vector<Pooled> pool;
  for (int m : {1, 2}) {
    for (Pooled& p : assignment_pool(rng, m, 8, 40)) {
      AggregatedInequality agg = aggregate(p.set, p.assignment);
      const std::size_t terms = agg.bilinear.size();
      if (terms == 0 || terms > 8 || count_relaxations(agg, p.set) > 6561) continue;
      pool.push_back(std::move(p));
    }
  }
  // Keep a spread of term counts.
  std::map<std::pair<int, std::size_t>, int> seen;
  std::vector<Pooled> chosen;
  for (Pooled& p : pool) {
    const std::size_t terms = aggregate(p.set, p.assignment).bilinear.size();
    if (seen[{p.set.m(), terms}]++ < 2) chosen.push_back(std::move(p));
  }
  long points = 0, value_mismatch = 0, choice_mismatch = 0, ties = 0;
  std::size_t max_terms = 0;
  for (const Pooled& p : chosen) {
    AggregatedInequality agg = aggregate(p.set, p.assignment);
    max_terms = std::max(max_terms, agg.bilinear.size());
    std::vector<LinearCut> all = relax_all(agg, p.set);
    for (int i = 0; i < 1000; ++i) {
      Point pt = random_point(rng, p.set);
      if (i % 2) {
        // Dyadic grid: exact arithmetic and many exact ties.
        for (auto& [a, x] : pt.x) x = std::floor(x) / 1.0;
        for (double& y : pt.y) y = std::floor(y * 4) / 8;
        for (auto& [k, z] : pt.z) z = std::floor(z * 2) / 4;
      }
      LinearCut best = relax_most_violated(agg, p.set, pt);
      std::size_t arg = 0;
      double top = all[0].violation(pt);
      int at_top = 1;
      for (std::size_t c = 1; c < all.size(); ++c) {
        const double v = all[c].violation(pt);
        if (v > top) {
          top = v;
          arg = c;
          at_top = 1;
        } else if (v == top) {
          ++at_top;
        }
      }
      ++points;
      if (at_top > 1) ++ties;
      if (std::abs(best.violation(pt) - top) > 1e-9 * std::max(1.0, std::abs(top))) ++value_mismatch;
      if (i % 2 && best.choices != all[arg].choices) ++choice_mismatch;
    }
  }
  std::ostringstream os;
  os << chosen.size() << " aggregations (up to " << max_terms << " terms), " << points << " points, " << ties
     << " with ties, value mismatches " << value_mismatch << ", tie-break mismatches " << choice_mismatch;
  return {!chosen.empty() && max_terms >= 6 && value_mismatch == 0 && choice_mismatch == 0, os.str()};
}

Outcome criterion7() {
  BenchOptions opts;
  int fc_improved = 0, fc_above_opt = 0, fc_above_rlt = 0;
  std::ostringstream os;
  os.precision(4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = gen_fc(seed, 20, 0.2);
    BenchRow r = bench_instance(inst, "fc" + std::to_string(seed), opts);
    if (r.tree.final_bound > r.tree.lp_bound + 1e-6) ++fc_improved;
    if (r.tree.final_bound > r.mip + 1e-6) ++fc_above_opt;
    if (r.tree_gap > r.rlt_gap + 1e-6) ++fc_above_rlt;
    os << " fc" << seed << "(tree " << r.tree_gap << ", rlt " << r.rlt_gap << ")";
  }
  int tr_ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = gen_tr(seed, 20, 8);
    BenchRow r = bench_instance(inst, "tr" + std::to_string(seed), opts);
    const bool ok = r.forest_gap && *r.forest_gap >= r.tree_gap - 1e-6;
    tr_ok += ok;
    os << " tr" << seed << "(tree " << r.tree_gap << ", forest " << r.forest_gap.value_or(-1) << ")";
  }
  std::ostringstream head;
  head << "fc: improved " << fc_improved << "/10, above optimum " << fc_above_opt << ", tree gap above RLT "
       << fc_above_rlt << "; tr: forest >= tree on " << tr_ok << "/10;" << os.str();
  return {fc_improved >= 8 && fc_above_opt == 0 && fc_above_rlt == 0 && tr_ok >= 7, head.str()};
}

Outcome criterion8() {
  std::mt19937_64 rng(88);
  std::vector<Pooled> pool = assignment_pool(rng, 1, 10, 8);
  std::vector<Pooled> forests = assignment_pool(rng, 2, 10, 8);
  pool.insert(pool.end(), forests.begin(), forests.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  int checked = 0, mismatched = 0, residual = 0;
  for (const Pooled& p : pool) {
    if (checked == 100) break;
    AggregatedInequality agg = aggregate(p.set, p.assignment);
    std::vector<RelaxChoice> ch = random_choices(rng, agg, p.set);
    LinearCut direct = relax(agg, p.set, ch);
    CutWeights w = weights_for(p.set, p.assignment, agg, ch);
    if (!bilinear_residual(p.set, w).empty()) ++residual;
    if (!closed_form_cut(p.set, w).same_coefficients(direct)) ++mismatched;
    ++checked;
  }
  std::ostringstream os;
  os << checked << " assignments, " << mismatched << " coefficient mismatches, " << residual
     << " weight vectors outside the cone";
  return {checked == 100 && mismatched == 0 && residual == 0, os.str()};
}

Outcome criterion9() {
  std::mt19937_64 rng(99);
  int passed = 0, total = 0;
  double worst = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    Network net = random_network(rng, std::uniform_int_distribution<int>(3, 6)(rng), 2);
    LiftedRows rows;
    const ArcId ai = net.arcs()[0].id, aj = net.arcs()[1].id;
    if (inst == 0) {
      rows.push_back({{ai, Rational(2)}, {aj, Rational(-5)}});
    } else {
      const int n_rows = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int r = 0; r < n_rows; ++r) {
        std::map<ArcId, Rational> row;
        for (const Arc& a : net.arcs()) {
          if (std::bernoulli_distribution(0.5)(rng)) row[a.id] = std::uniform_int_distribution<int>(-5, 5)(rng);
        }
        rows.push_back(row);
      }
    }
    LiftedCheck c = lifted_hull_check(net, rows, 20, 100 + inst);
    ++total;
    passed += c.pass && c.objectives == 20;
    worst = std::max(worst, c.max_rel_error);
  }
  std::ostringstream os;
  os << passed << "/" << total << " instances, worst relative error " << worst;
  return {passed == total, os.str()};
}

}  // namespace

int main() {
  run(1, 1.0, criterion1);
  run(2, 1.0, criterion2);
  run(3, 1.0, criterion3);
  run(4, 300.0, criterion4);
  run(5, 600.0, criterion5);
  run(6, 60.0, criterion6);
  run(7, 1200.0, criterion7);
  run(8, 60.0, criterion8);
  run(9, 120.0, criterion9);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
