#ifndef NETCUT_MODEL_H_
#define NETCUT_MODEL_H_

#include <map>
#include <optional>
#include <vector>

#include "netcut/lp.h"
#include "netcut/network.h"
#include "netcut/rational.h"

namespace netcut {

// y_j * x_arc = z_k, with j in 1..m.
struct Triple {
  int k;
  ArcId arc;
  int j;
};

// The set S: x in Xi, y in the simplex of dimension m, plus the bilinear triples.
class BilinearSet {
 public:
  BilinearSet() = default;
  BilinearSet(Network net, int m, std::vector<Triple> triples);

  const Network& net() const { return net_; }
  int m() const { return m_; }
  // Sorted by k; k runs over 1..kappa.
  const std::vector<Triple>& triples() const { return triples_; }
  int num_triples() const { return static_cast<int>(triples_.size()); }
  const Triple& triple(int k) const;
  std::optional<int> triple_for(ArcId arc, int j) const;

 private:
  Network net_;
  int m_ = 0;
  std::vector<Triple> triples_;
  std::map<std::pair<ArcId, int>, int> by_pair_;
};

struct Point {
  std::map<ArcId, double> x;
  std::vector<double> y;  // y[j-1]
  std::map<int, double> z;
};

// Column indices of x (by arc position), y (j-1) and z (k-1) inside an LpModel.
struct VarLayout {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
};

struct SetModel {
  LpModel lp;
  VarLayout vars;
};

Point point_from_values(const BilinearSet& s, const VarLayout& vars,
                        const std::vector<double>& values);

// Adds the flow-balance rows of Xi over the given x columns.
void add_xi_rows(LpModel& lp, const Network& net, const std::vector<int>& xcol,
                 const std::string& prefix = "bal");

SetModel mccormick(const BilinearSet& s);

// Disjunctive extended formulation with copies w^j and v^j_k.
SetModel extended_formulation(const BilinearSet& s);

// Linear constraint over the y variables of a benchmark model (budget, conflicts).
struct YRow {
  std::vector<std::pair<int, Rational>> coef;  // (j, coefficient), j in 1..num_y
  RowType type;
  Rational rhs;
};

// A benchmark problem: min c.x + d.y + e.z over Xi, binary y with side rows,
// z_k = x_i y_j for every triple.
struct BilinearMip {
  Network net;
  int num_y = 0;
  std::vector<Triple> triples;
  std::vector<YRow> y_rows;
  std::vector<double> cost_x;  // by arc position
  std::vector<double> cost_y;  // j-1
  std::vector<double> cost_z;  // k-1
  double offset = 0.0;
};

// McCormick relaxation of the whole benchmark problem with its objective.
SetModel mccormick(const BilinearMip& mip);

// Level-1 RLT: every constraint times y_j and (1 - y_j), linearized.
SetModel rlt1(const BilinearMip& mip);

void set_objective(SetModel& model, const BilinearMip& mip);

}  // namespace netcut

#endif  // NETCUT_MODEL_H_
