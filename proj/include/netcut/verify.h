#ifndef NETCUT_VERIFY_H_
#define NETCUT_VERIFY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "netcut/ecr.h"
#include "netcut/lp.h"
#include "netcut/model.h"

namespace netcut {

struct ValidityResult {
  bool valid = true;
  double min_slack = kInfinity;  // over all feasible disjuncts
  int worst_disjunct = -1;       // 0 for y = 0, j for y = e_j
  std::optional<Point> certificate;
};

// Minimizes the cut slack over each vertex of the simplex with z = x y fixed.
ValidityResult validity_check(const LinearCut& cut, const BilinearSet& s, double tol = 1e-6);

// Minimizes the cut slack over the disjunctive extended formulation.
ValidityResult validity_check_extended(const LinearCut& cut, const BilinearSet& s, double tol = 1e-6);

// Linear objective over (x, y, z) of a set.
struct SetObjective {
  std::map<ArcId, double> x;
  std::vector<double> y;
  std::map<int, double> z;
  double constant = 0.0;
};

struct HullResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::optional<Point> point;
};

// Minimum of a linear objective over conv(S), one LP per simplex vertex.
HullResult hull_minimum(const BilinearSet& s, const SetObjective& obj);

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MipResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<int> y;  // best binary pattern
  long patterns = 0;   // feasible patterns solved
};

// Exact optimum by enumerating binary y patterns that satisfy the y rows.
MipResult mip_optimum(const BilinearMip& mip, int max_log2 = 20);

// Rows of A~: z~_k = y * sum_i A~_ki x_i.
using LiftedRows = std::vector<std::map<ArcId, Rational>>;

struct LiftedCheck {
  bool pass = true;
  double max_rel_error = 0.0;
  int objectives = 0;
};

// Compares the extended hull of S^1 intersected with z~ = A~ w against the
// per-disjunct description of the multi-term set, over random objectives.
LiftedCheck lifted_hull_check(const Network& net, const LiftedRows& rows, int objectives,
                              std::uint64_t seed, double tol = 1e-6);

struct TightnessReport {
  bool valid = false;
  int points = 0;       // distinct tight points collected
  int affine_rank = 0;  // -1 when no tight point exists
};

TightnessReport tightness_report(const LinearCut& cut, const BilinearSet& s, int samples = 20,
                                 std::uint64_t seed = 1, double tol = 1e-6);

}  // namespace netcut

#endif  // NETCUT_VERIFY_H_
