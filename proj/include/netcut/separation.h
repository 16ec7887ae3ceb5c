#ifndef NETCUT_SEPARATION_H_
#define NETCUT_SEPARATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netcut/ecr.h"
#include "netcut/instances.h"
#include "netcut/model.h"
#include "netcut/verify.h"

namespace netcut {

struct SeparationConfig {
  int top_classes = 35;
  int max_aggregations = 3;     // rows aggregated with the base equality, plus one
  double improvement_stop = 0.01;
  double violation_tol = 1e-6;
  int forest_budget = 1;        // forest members beyond the seed
  std::uint64_t seed = 1;
  bool verify_cuts = false;
  int max_rounds = 100;

  // Throws std::invalid_argument on a nonpositive field or improvement_stop outside (0,1).
  void validate() const;
};

struct Residual {
  int k;
  Sign sign;
  double psi;
};

// Descending psi, ties by ascending k.
std::vector<Residual> residual_ranking(const Point& p, const BilinearSet& s);

// Cuts for the given classes, deduplicated and sorted by decreasing violation.
// A zero residual class is tried with both signs.
std::vector<LinearCut> separate_classes(const Point& p, const BilinearSet& s,
                                        const std::vector<Residual>& classes,
                                        const SeparationConfig& cfg);

std::vector<LinearCut> separate(const Point& p, const BilinearSet& s, const SeparationConfig& cfg);

struct InstanceCut {
  int set_index;
  LinearCut cut;
};

struct LoopReport {
  std::vector<double> trajectory;  // LP bound after each solve; [0] is McCormick
  std::vector<int> cuts_per_round;
  int total_cuts = 0;
  int rounds = 0;                  // separation rounds performed
  int rejected_cuts = 0;           // failed re-verification
  double lp_bound = 0.0;
  double final_bound = 0.0;
  std::optional<double> optimum;
  std::optional<double> gap;
  double seconds = 0.0;
  std::vector<InstanceCut> cuts;

  // Gap closed after the first `round` separation rounds.
  std::optional<double> gap_after(int round) const;
};

// Point of a relaxation set read from a solution of the instance model.
Point restrict_point(const RelaxationSet& rs, const VarLayout& vars, const std::vector<double>& values);

// Row of the instance model equivalent to a cut on one of its relaxation sets.
std::vector<LpTerm> lift_cut(const RelaxationSet& rs, const Network& net, const VarLayout& vars,
                             const LinearCut& cut);

// Rounds of {solve, separate, add cuts} on the McCormick relaxation of `mip`.
LoopReport cut_loop(const BilinearMip& mip, const std::vector<RelaxationSet>& sets,
                    const SeparationConfig& cfg, std::optional<double> optimum = std::nullopt);

// The same loop on a single set with sum y <= 1; the optimum is the exact hull value.
LoopReport cut_loop(const BilinearSet& s, const SetObjective& objective, const SeparationConfig& cfg);

std::string loop_csv_header();
std::string loop_csv_row(const std::string& id, const LoopReport& r);

// (bound - lp) / (optimum - lp); zero when the relaxation is already exact.
double gap_closed(double bound, double lp, double optimum);

struct BenchOptions {
  SeparationConfig cfg;
  TrMode forest_mode = TrMode::kPairsPlusFree;
};

struct BenchRow {
  std::string instance;
  double lp = 0.0;
  double mip = 0.0;
  double root_gap = 0.0;  // gap after the first separation round of the main loop
  double tree_gap = 0.0;
  std::optional<double> forest_gap;  // tr only
  double rlt_gap = 0.0;
  int cuts = 0;
  int rounds = 0;
  double seconds = 0.0;
  LoopReport tree;
  std::optional<LoopReport> forest;
  double rlt = 0.0;
};

// Tree loop on the single-y sets, forest loop on conflict sets (tr), RLT-1 and
// the brute-force optimum. The main loop is the forest loop when present.
BenchRow bench_instance(const Instance& inst, const std::string& id, const BenchOptions& opts);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
// Column means, labelled "avg".
BenchRow bench_average(const std::vector<BenchRow>& rows);

}  // namespace netcut

#endif  // NETCUT_SEPARATION_H_
