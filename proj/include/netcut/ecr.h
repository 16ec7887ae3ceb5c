#ifndef NETCUT_ECR_H_
#define NETCUT_ECR_H_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "netcut/model.h"
#include "netcut/network.h"
#include "netcut/rational.h"

namespace netcut {

// Network data symbol: supply f_v or capacity u_a.
struct Param {
  enum class Kind { kSupply, kCapacity };
  Kind kind;
  int id;
  auto operator<=>(const Param&) const = default;
};

// Affine expression in the network data, kept symbolic so aggregated
// inequalities can be compared term by term.
class ParamExpr {
 public:
  ParamExpr() = default;
  explicit ParamExpr(const Rational& c) : constant_(c) {}
  static ParamExpr supply(NodeId v, const Rational& coef = 1);
  static ParamExpr capacity(ArcId a, const Rational& coef = 1);

  ParamExpr& operator+=(const ParamExpr& o);
  ParamExpr& operator-=(const ParamExpr& o);
  ParamExpr operator-() const;
  ParamExpr operator*(const Rational& c) const;
  friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) { return a += b; }
  friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) { return a -= b; }
  bool operator==(const ParamExpr& o) const = default;

  const Rational& constant() const { return constant_; }
  const std::map<Param, Rational>& terms() const { return terms_; }
  bool is_zero() const { return constant_ == 0 && terms_.empty(); }
  Rational evaluate(const Network& net) const;
  std::string str(const Network& net) const;

 private:
  Rational constant_ = 0;
  std::map<Param, Rational> terms_;
};

// [I_1..I_m, Ibar | J, Jbar] for class-l^sign.
struct EcrAssignment {
  int class_k = 0;
  Sign sign = Sign::kPlus;
  std::vector<std::set<FlowBalanceRef>> I;
  std::set<FlowBalanceRef> Ibar;
  std::set<ArcId> J;
  std::set<ArcId> Jbar;

  int size() const;
  bool operator==(const EcrAssignment& o) const = default;
};

std::string to_string(const EcrAssignment& a, const Network& net);

enum class Condition { kC1, kC2, kRowUnavailable, kMalformed };

const char* to_string(Condition c);

class ConditionViolated : public std::runtime_error {
 public:
  ConditionViolated(Condition which, const std::string& detail);
  Condition which() const { return which_; }
  const std::string& detail() const { return detail_; }

 private:
  Condition which_;
  std::string detail_;
};

class OptionUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using BilinearKey = std::pair<ArcId, int>;  // y_j * x_arc

// sum bilinear + sum x + sum y + sum z + constant >= 0.
struct AggregatedInequality {
  EcrAssignment assignment;
  std::map<BilinearKey, Rational> bilinear;  // surviving terms only
  std::map<ArcId, Rational> x;
  std::vector<ParamExpr> y;  // y[j-1]
  std::map<int, Rational> z;
  ParamExpr constant;
  int cancel_count = 0;
  // Every cancelled term came from exactly two weighted constraints.
  bool pairwise = true;
  struct Flag {
    std::string constraint;
    bool cancelled;
  };
  std::vector<Flag> flags;
};

std::string to_string(const AggregatedInequality& agg, const Network& net);

AggregatedInequality aggregate(const BilinearSet& s, const EcrAssignment& a);

// Relaxation of one surviving term:
//   kLowerBound : y x >= 0 (negative term) or (1-y) x >= 0 (positive, m = 1)
//   kUpperBound : y (u - x) >= 0 (positive term) or (1-y)(u - x) >= 0 (negative, m = 1)
//   kBilinear   : through z_k
enum class RelaxOption { kLowerBound, kUpperBound, kBilinear };

const char* to_string(RelaxOption o);

struct RelaxChoice {
  BilinearKey term;
  RelaxOption option;
  bool operator==(const RelaxChoice& o) const = default;
};

// sum q x + sum r y + sum s z >= t.
struct LinearCut {
  std::map<ArcId, Rational> q;
  std::vector<Rational> r;
  std::map<int, Rational> s;
  Rational t = 0;
  EcrAssignment assignment;
  std::vector<RelaxChoice> choices;

  double lhs(const Point& p) const;
  // t - lhs(p); positive when p violates the cut.
  double violation(const Point& p) const;
  bool same_coefficients(const LinearCut& o) const;
};

std::string to_string(const LinearCut& c, const Network& net);

// Options for one surviving term in the fixed tie-break order.
std::vector<RelaxOption> relax_options(const BilinearSet& s, const BilinearKey& term,
                                       const Rational& coef);

LinearCut relax(const AggregatedInequality& agg, const BilinearSet& s,
                const std::vector<RelaxChoice>& choices);

std::size_t count_relaxations(const AggregatedInequality& agg, const BilinearSet& s);

std::vector<LinearCut> relax_all(const AggregatedInequality& agg, const BilinearSet& s);

LinearCut relax_most_violated(const AggregatedInequality& agg, const BilinearSet& s,
                              const Point& p);

// Multipliers of the projection cone, keyed by the constraint they weight.
struct CutWeights {
  std::map<std::pair<int, FlowBalanceRef>, Rational> gamma;  // (j, row) times y_j
  std::map<FlowBalanceRef, Rational> theta;                  // row times (1 - sum y)
  std::map<BilinearKey, Rational> eta;                       // y_j x_i >= 0
  std::map<BilinearKey, Rational> rho;                       // y_j (u_i - x_i) >= 0
  std::map<ArcId, Rational> lambda;                          // (1 - sum y) x_i >= 0
  std::map<ArcId, Rational> mu;                              // (1 - sum y)(u_i - x_i) >= 0
  std::map<int, Rational> beta_plus;                         // y_j x_i - z_k >= 0
  std::map<int, Rational> beta_minus;                        // z_k - y_j x_i >= 0
};

CutWeights weights_for(const BilinearSet& s, const EcrAssignment& a,
                       const AggregatedInequality& agg, const std::vector<RelaxChoice>& choices);

// Bilinear coefficients left by the weighted sum; empty when the weights lie in the cone.
std::map<BilinearKey, Rational> bilinear_residual(const BilinearSet& s, const CutWeights& w);

LinearCut closed_form_cut(const BilinearSet& s, const CutWeights& w);

}  // namespace netcut

#endif  // NETCUT_ECR_H_
