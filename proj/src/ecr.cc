#include "netcut/ecr.h"

#include <algorithm>
#include <sstream>

namespace netcut {

ParamExpr ParamExpr::supply(NodeId v, const Rational& coef) {
  ParamExpr e;
  if (coef != 0) e.terms_[{Param::Kind::kSupply, v}] = coef;
  return e;
}

ParamExpr ParamExpr::capacity(ArcId a, const Rational& coef) {
  ParamExpr e;
  if (coef != 0) e.terms_[{Param::Kind::kCapacity, a}] = coef;
  return e;
}

ParamExpr& ParamExpr::operator+=(const ParamExpr& o) {
  constant_ += o.constant_;
  for (const auto& [p, c] : o.terms_) {
    Rational& slot = terms_[p];
    slot += c;
    if (slot == 0) terms_.erase(p);
  }
  return *this;
}

ParamExpr& ParamExpr::operator-=(const ParamExpr& o) { return *this += -o; }

ParamExpr ParamExpr::operator-() const { return *this * Rational(-1); }

ParamExpr ParamExpr::operator*(const Rational& c) const {
  ParamExpr e;
  if (c == 0) return e;
  e.constant_ = constant_ * c;
  for (const auto& [p, v] : terms_) e.terms_[p] = v * c;
  return e;
}

Rational ParamExpr::evaluate(const Network& net) const {
  Rational v = constant_;
  for (const auto& [p, c] : terms_) {
    v += c * (p.kind == Param::Kind::kSupply ? net.supply(p.id) : net.capacity(p.id));
  }
  return v;
}

namespace {

std::string arc_name(const Network& net, ArcId a) {
  const Arc& arc = net.arc(a);
  return "(" + std::to_string(arc.tail) + "," + std::to_string(arc.head) + ")";
}

// Appends "+ c*name" in a readable form.
void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& name) {
  if (c == 0) return;
  Rational mag = abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  first = false;
  if (name.empty()) {
    os << to_string(mag);
  } else {
    if (mag != 1) os << to_string(mag) << "*";
    os << name;
  }
}

}  // namespace

std::string ParamExpr::str(const Network& net) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    std::string name = p.kind == Param::Kind::kSupply ? "f" + std::to_string(p.id)
                                                      : "u" + arc_name(net, p.id);
    append_term(os, first, c, name);
  }
  append_term(os, first, constant_, "");
  if (first) os << "0";
  return os.str();
}

int EcrAssignment::size() const {
  int n = static_cast<int>(Ibar.size() + J.size() + Jbar.size());
  for (const auto& s : I) n += static_cast<int>(s.size());
  return n;
}

std::string to_string(const EcrAssignment& a, const Network& net) {
  auto rows = [](const std::set<FlowBalanceRef>& s) {
    std::string out = "{";
    bool first = true;
    for (const FlowBalanceRef& r : s) {
      if (!first) out += ",";
      first = false;
      out += to_string(r);
    }
    return out + "}";
  };
  auto arcs = [&](const std::set<ArcId>& s) {
    std::string out = "{";
    bool first = true;
    for (ArcId x : s) {
      if (!first) out += ",";
      first = false;
      out += arc_name(net, x);
    }
    return out + "}";
  };
  std::string out = "[";
  for (const auto& s : a.I) out += rows(s) + ",";
  out += rows(a.Ibar) + " | " + arcs(a.J) + "," + arcs(a.Jbar) + "]";
  return out;
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::kC1:
      return "C1";
    case Condition::kC2:
      return "C2";
    case Condition::kRowUnavailable:
      return "row-unavailable";
    case Condition::kMalformed:
      return "malformed";
  }
  return "?";
}

ConditionViolated::ConditionViolated(Condition which, const std::string& detail)
    : std::runtime_error(std::string(to_string(which)) + ": " + detail),
      which_(which),
      detail_(detail) {}

std::string to_string(const AggregatedInequality& agg, const Network& net) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : agg.z) append_term(os, first, c, "z" + std::to_string(k));
  for (const auto& [key, c] : agg.bilinear) {
    append_term(os, first, c, "y" + std::to_string(key.second) + "*x" + arc_name(net, key.first));
  }
  for (std::size_t j = 0; j < agg.y.size(); ++j) {
    if (agg.y[j].is_zero()) continue;
    os << (first ? "" : " + ") << "(" << agg.y[j].str(net) << ")*y" << j + 1;
    first = false;
  }
  for (const auto& [a, c] : agg.x) append_term(os, first, c, "x" + arc_name(net, a));
  if (!agg.constant.is_zero()) {
    os << (first ? "" : " + ") << "(" << agg.constant.str(net) << ")";
    first = false;
  }
  if (first) os << "0";
  os << " >= 0";
  return os.str();
}

namespace {

// One weighted constraint of the aggregation.
struct Weighted {
  std::string label;
  std::map<BilinearKey, Rational> bilinear;
};

ParamExpr row_rhs(const FlowBalanceRef& ref) {
  return ParamExpr::supply(ref.node, sign_value(ref.sign));
}

void check_assignment(const BilinearSet& s, const EcrAssignment& a) {
  const Network& net = s.net();
  if (a.class_k < 1 || a.class_k > s.num_triples()) {
    throw ConditionViolated(Condition::kMalformed, "unknown class " + std::to_string(a.class_k));
  }
  if (static_cast<int>(a.I.size()) != s.m()) {
    throw ConditionViolated(Condition::kMalformed, "assignment needs one I set per y variable");
  }
  std::map<FlowBalanceRef, int> multiplicity;
  std::map<NodeId, std::set<Sign>> signs;
  auto visit = [&](const std::set<FlowBalanceRef>& rows) {
    for (const FlowBalanceRef& r : rows) {
      if (!net.has_node(r.node)) {
        throw ConditionViolated(Condition::kMalformed, "unknown node " + std::to_string(r.node));
      }
      if (!net.has_row(r)) {
        throw ConditionViolated(Condition::kRowUnavailable,
                                "node " + std::to_string(r.node) + " has no " + sign_char(r.sign) +
                                    " flow-balance row");
      }
      ++multiplicity[r];
      signs[r.node].insert(r.sign);
    }
  };
  for (const auto& rows : a.I) visit(rows);
  visit(a.Ibar);
  for (const auto& [r, n] : multiplicity) {
    if (n == s.m() + 1) {
      throw ConditionViolated(Condition::kMalformed, "row " + to_string(r) + " used by every multiplier");
    }
  }
  for (const auto& [v, sg] : signs) {
    if (sg.size() > 1) {
      throw ConditionViolated(Condition::kMalformed, "node " + std::to_string(v) + " used with both signs");
    }
  }
  for (ArcId x : a.J) {
    if (!net.has_arc(x)) throw ConditionViolated(Condition::kMalformed, "unknown arc in J");
    if (a.Jbar.count(x)) {
      throw ConditionViolated(Condition::kMalformed, "arc " + arc_name(net, x) + " in both J and Jbar");
    }
  }
  for (ArcId x : a.Jbar) {
    if (!net.has_arc(x)) throw ConditionViolated(Condition::kMalformed, "unknown arc in Jbar");
  }
}

}  // namespace

AggregatedInequality aggregate(const BilinearSet& s, const EcrAssignment& a) {
  check_assignment(s, a);
  const Network& net = s.net();
  const int m = s.m();
  AggregatedInequality agg;
  agg.assignment = a;
  agg.y.assign(m, ParamExpr());

  std::vector<Weighted> parts;
  const Triple& base = s.triple(a.class_k);
  const int sb = sign_value(a.sign);
  {
    Weighted w{"base z" + std::to_string(base.k) + sign_char(a.sign), {}};
    w.bilinear[{base.arc, base.j}] = sb;
    agg.z[base.k] -= sb;
    parts.push_back(std::move(w));
  }
  for (int j = 1; j <= m; ++j) {
    for (const FlowBalanceRef& ref : a.I[j - 1]) {
      SparseRow row = flow_balance_row(net, ref);
      Weighted w{"y" + std::to_string(j) + "*" + to_string(ref), {}};
      for (const auto& [arc, c] : row.coef) w.bilinear[{arc, j}] += c;
      agg.y[j - 1] -= row_rhs(ref);
      parts.push_back(std::move(w));
    }
  }
  for (const FlowBalanceRef& ref : a.Ibar) {
    SparseRow row = flow_balance_row(net, ref);
    Weighted w{"(1-sum y)*" + to_string(ref), {}};
    for (const auto& [arc, c] : row.coef) {
      agg.x[arc] += c;
      for (int j = 1; j <= m; ++j) w.bilinear[{arc, j}] -= c;
    }
    agg.constant -= row_rhs(ref);
    for (int j = 0; j < m; ++j) agg.y[j] += row_rhs(ref);
    parts.push_back(std::move(w));
  }
  for (ArcId arc : a.J) {
    Weighted w{"(1-sum y)*x" + arc_name(net, arc) + ">=0", {}};
    agg.x[arc] += 1;
    for (int j = 1; j <= m; ++j) w.bilinear[{arc, j}] -= 1;
    parts.push_back(std::move(w));
  }
  for (ArcId arc : a.Jbar) {
    Weighted w{"(1-sum y)*(u-x)" + arc_name(net, arc) + ">=0", {}};
    agg.x[arc] -= 1;
    agg.constant += ParamExpr::capacity(arc);
    for (int j = 1; j <= m; ++j) {
      w.bilinear[{arc, j}] += 1;
      agg.y[j - 1] -= ParamExpr::capacity(arc);
    }
    parts.push_back(std::move(w));
  }

  // Cancellation accounting.
  std::map<BilinearKey, std::vector<int>> producers;
  std::map<BilinearKey, Rational> total;
  for (int c = 0; c < static_cast<int>(parts.size()); ++c) {
    for (const auto& [key, v] : parts[c].bilinear) {
      if (v == 0) continue;
      producers[key].push_back(c);
      total[key] += v;
    }
  }
  std::vector<bool> cancelled(parts.size(), false);
  for (const auto& [key, v] : total) {
    if (v == 0) {
      ++agg.cancel_count;
      if (producers[key].size() != 2) agg.pairwise = false;
      for (int c : producers[key]) cancelled[c] = true;
    } else {
      agg.bilinear[key] = v;
    }
  }
  for (std::size_t c = 0; c < parts.size(); ++c) agg.flags.push_back({parts[c].label, cancelled[c]});
  for (auto it = agg.x.begin(); it != agg.x.end();) it = it->second == 0 ? agg.x.erase(it) : std::next(it);
  for (auto it = agg.z.begin(); it != agg.z.end();) it = it->second == 0 ? agg.z.erase(it) : std::next(it);

  const int members = a.size();
  if (members > 0) {
    if (agg.cancel_count < members) {
      throw ConditionViolated(Condition::kC1, std::to_string(agg.cancel_count) +
                                                  " bilinear terms cancelled, at least " +
                                                  std::to_string(members) + " required");
    }
    for (const auto& f : agg.flags) {
      if (!f.cancelled) {
        throw ConditionViolated(Condition::kC2, "no cancelled term in " + f.constraint);
      }
    }
  }
  return agg;
}

const char* to_string(RelaxOption o) {
  switch (o) {
    case RelaxOption::kLowerBound:
      return "lower";
    case RelaxOption::kUpperBound:
      return "upper";
    case RelaxOption::kBilinear:
      return "z";
  }
  return "?";
}

double LinearCut::lhs(const Point& p) const {
  double v = 0.0;
  for (const auto& [a, c] : q) v += to_double(c) * p.x.at(a);
  for (std::size_t j = 0; j < r.size(); ++j) v += to_double(r[j]) * p.y[j];
  for (const auto& [k, c] : s) v += to_double(c) * p.z.at(k);
  return v;
}

double LinearCut::violation(const Point& p) const { return to_double(t) - lhs(p); }

bool LinearCut::same_coefficients(const LinearCut& o) const {
  return q == o.q && r == o.r && s == o.s && t == o.t;
}

std::string to_string(const LinearCut& c, const Network& net) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, v] : c.q) append_term(os, first, v, "x" + arc_name(net, a));
  for (std::size_t j = 0; j < c.r.size(); ++j) append_term(os, first, c.r[j], "y" + std::to_string(j + 1));
  for (const auto& [k, v] : c.s) append_term(os, first, v, "z" + std::to_string(k));
  if (first) os << "0";
  os << " >= " << to_string(c.t);
  return os.str();
}

std::vector<RelaxOption> relax_options(const BilinearSet& s, const BilinearKey& term,
                                       const Rational& coef) {
  std::vector<RelaxOption> out;
  const bool has_z = s.triple_for(term.first, term.second).has_value();
  if (coef > 0) {
    if (s.m() == 1) out.push_back(RelaxOption::kLowerBound);
    out.push_back(RelaxOption::kUpperBound);
  } else {
    out.push_back(RelaxOption::kLowerBound);
    if (s.m() == 1) out.push_back(RelaxOption::kUpperBound);
  }
  if (has_z) out.push_back(RelaxOption::kBilinear);
  if (out.empty()) throw OptionUnavailable("no relaxation for surviving term");
  return out;
}

namespace {

// Adds the linear replacement of coef * y_j x_i under option o to the cut.
void apply_option(const BilinearSet& s, const BilinearKey& term, const Rational& coef,
                  RelaxOption o, LinearCut& cut) {
  const auto [arc, j] = term;
  const Rational& u = s.net().capacity(arc);
  if (coef > 0) {
    switch (o) {
      case RelaxOption::kLowerBound:
        if (s.m() != 1) throw OptionUnavailable("(1-y)x >= 0 needs m = 1");
        cut.q[arc] += coef;
        break;
      case RelaxOption::kUpperBound:
        cut.r[j - 1] += coef * u;
        break;
      case RelaxOption::kBilinear: {
        auto k = s.triple_for(arc, j);
        if (!k) throw OptionUnavailable("no triple for surviving term");
        cut.s[*k] += coef;
        break;
      }
    }
  } else {
    const Rational mag = -coef;
    switch (o) {
      case RelaxOption::kLowerBound:
        break;
      case RelaxOption::kUpperBound:
        if (s.m() != 1) throw OptionUnavailable("(1-y)(u-x) >= 0 needs m = 1");
        cut.t -= mag * u;
        cut.q[arc] -= mag;
        cut.r[j - 1] -= mag * u;
        break;
      case RelaxOption::kBilinear: {
        auto k = s.triple_for(arc, j);
        if (!k) throw OptionUnavailable("no triple for surviving term");
        cut.s[*k] -= mag;
        break;
      }
    }
  }
}

void drop_zeros(LinearCut& cut) {
  for (auto it = cut.q.begin(); it != cut.q.end();) it = it->second == 0 ? cut.q.erase(it) : std::next(it);
  for (auto it = cut.s.begin(); it != cut.s.end();) it = it->second == 0 ? cut.s.erase(it) : std::next(it);
}

LinearCut linear_part(const AggregatedInequality& agg, const BilinearSet& s) {
  LinearCut cut;
  cut.assignment = agg.assignment;
  cut.q = agg.x;
  cut.s = agg.z;
  cut.r.resize(s.m());
  for (int j = 0; j < s.m(); ++j) cut.r[j] = agg.y[j].evaluate(s.net());
  cut.t = -agg.constant.evaluate(s.net());
  return cut;
}

// Contribution of coef * y_j x_i's replacement to the cut's LHS - t at p.
double option_value(const BilinearSet& s, const BilinearKey& term, const Rational& coef,
                    RelaxOption o, const Point& p) {
  const auto [arc, j] = term;
  const double c = to_double(coef);
  const double u = to_double(s.net().capacity(arc));
  const double x = p.x.at(arc);
  const double y = p.y[j - 1];
  auto zval = [&] { return p.z.at(*s.triple_for(arc, j)); };
  if (coef > 0) {
    switch (o) {
      case RelaxOption::kLowerBound:
        return c * x;
      case RelaxOption::kUpperBound:
        return c * u * y;
      case RelaxOption::kBilinear:
        return c * zval();
    }
  } else {
    switch (o) {
      case RelaxOption::kLowerBound:
        return 0.0;
      case RelaxOption::kUpperBound:
        return -c * (u - x - u * y);
      case RelaxOption::kBilinear:
        return c * zval();
    }
  }
  return 0.0;
}

}  // namespace

LinearCut relax(const AggregatedInequality& agg, const BilinearSet& s,
                const std::vector<RelaxChoice>& choices) {
  if (choices.size() != agg.bilinear.size()) {
    throw std::invalid_argument("one relaxation choice per surviving term required");
  }
  LinearCut cut = linear_part(agg, s);
  for (const RelaxChoice& ch : choices) {
    auto it = agg.bilinear.find(ch.term);
    if (it == agg.bilinear.end()) throw std::invalid_argument("choice for a cancelled term");
    auto opts = relax_options(s, ch.term, it->second);
    if (std::find(opts.begin(), opts.end(), ch.option) == opts.end()) {
      throw OptionUnavailable(std::string("option ") + to_string(ch.option) + " not available");
    }
    apply_option(s, ch.term, it->second, ch.option, cut);
  }
  cut.choices = choices;
  drop_zeros(cut);
  return cut;
}

std::size_t count_relaxations(const AggregatedInequality& agg, const BilinearSet& s) {
  std::size_t n = 1;
  for (const auto& [key, c] : agg.bilinear) n *= relax_options(s, key, c).size();
  return n;
}

std::vector<LinearCut> relax_all(const AggregatedInequality& agg, const BilinearSet& s) {
  std::vector<BilinearKey> keys;
  std::vector<std::vector<RelaxOption>> opts;
  for (const auto& [key, c] : agg.bilinear) {
    keys.push_back(key);
    opts.push_back(relax_options(s, key, c));
  }
  std::vector<LinearCut> out;
  std::vector<std::size_t> idx(keys.size(), 0);
  while (true) {
    std::vector<RelaxChoice> choices;
    for (std::size_t i = 0; i < keys.size(); ++i) choices.push_back({keys[i], opts[i][idx[i]]});
    out.push_back(relax(agg, s, choices));
    // Odometer with the last term varying fastest.
    int pos = static_cast<int>(keys.size()) - 1;
    while (pos >= 0 && ++idx[pos] == opts[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

LinearCut relax_most_violated(const AggregatedInequality& agg, const BilinearSet& s,
                              const Point& p) {
  std::vector<RelaxChoice> choices;
  for (const auto& [key, c] : agg.bilinear) {
    auto opts = relax_options(s, key, c);
    RelaxOption best = opts.front();
    double best_val = option_value(s, key, c, best, p);
    for (std::size_t i = 1; i < opts.size(); ++i) {
      double v = option_value(s, key, c, opts[i], p);
      if (v < best_val) {
        best_val = v;
        best = opts[i];
      }
    }
    choices.push_back({key, best});
  }
  return relax(agg, s, choices);
}

CutWeights weights_for(const BilinearSet& s, const EcrAssignment& a,
                       const AggregatedInequality& agg, const std::vector<RelaxChoice>& choices) {
  CutWeights w;
  (a.sign == Sign::kPlus ? w.beta_plus : w.beta_minus)[a.class_k] += 1;
  for (int j = 1; j <= static_cast<int>(a.I.size()); ++j) {
    for (const FlowBalanceRef& r : a.I[j - 1]) w.gamma[{j, r}] += 1;
  }
  for (const FlowBalanceRef& r : a.Ibar) w.theta[r] += 1;
  for (ArcId x : a.J) w.lambda[x] += 1;
  for (ArcId x : a.Jbar) w.mu[x] += 1;
  for (const RelaxChoice& ch : choices) {
    const Rational& c = agg.bilinear.at(ch.term);
    const Rational mag = abs(c);
    const bool pos = c > 0;
    switch (ch.option) {
      case RelaxOption::kLowerBound:
        if (pos) {
          w.lambda[ch.term.first] += mag;
        } else {
          w.eta[ch.term] += mag;
        }
        break;
      case RelaxOption::kUpperBound:
        if (pos) {
          w.rho[ch.term] += mag;
        } else {
          w.mu[ch.term.first] += mag;
        }
        break;
      case RelaxOption::kBilinear: {
        int k = *s.triple_for(ch.term.first, ch.term.second);
        (pos ? w.beta_minus : w.beta_plus)[k] += mag;
        break;
      }
    }
  }
  return w;
}

std::map<BilinearKey, Rational> bilinear_residual(const BilinearSet& s, const CutWeights& w) {
  const Network& net = s.net();
  std::map<BilinearKey, Rational> res;
  for (const auto& [k, b] : w.beta_plus) {
    const Triple& t = s.triple(k);
    res[{t.arc, t.j}] += b;
  }
  for (const auto& [k, b] : w.beta_minus) {
    const Triple& t = s.triple(k);
    res[{t.arc, t.j}] -= b;
  }
  for (const auto& [key, g] : w.gamma) {
    for (const auto& [arc, e] : flow_balance_row(net, key.second).coef) res[{arc, key.first}] += g * e;
  }
  for (const auto& [ref, th] : w.theta) {
    for (const auto& [arc, e] : flow_balance_row(net, ref).coef) {
      for (int j = 1; j <= s.m(); ++j) res[{arc, j}] -= th * e;
    }
  }
  for (const auto& [key, v] : w.eta) res[key] += v;
  for (const auto& [key, v] : w.rho) res[key] -= v;
  for (const auto& [arc, v] : w.lambda) {
    for (int j = 1; j <= s.m(); ++j) res[{arc, j}] -= v;
  }
  for (const auto& [arc, v] : w.mu) {
    for (int j = 1; j <= s.m(); ++j) res[{arc, j}] += v;
  }
  for (auto it = res.begin(); it != res.end();) it = it->second == 0 ? res.erase(it) : std::next(it);
  return res;
}

LinearCut closed_form_cut(const BilinearSet& s, const CutWeights& w) {
  const Network& net = s.net();
  LinearCut cut;
  cut.r.assign(s.m(), Rational(0));
  // q_i = sum_t E_ti theta_t + lambda_i - mu_i
  for (const auto& [ref, th] : w.theta) {
    for (const auto& [arc, e] : flow_balance_row(net, ref).coef) cut.q[arc] += e * th;
  }
  for (const auto& [arc, v] : w.lambda) cut.q[arc] += v;
  for (const auto& [arc, v] : w.mu) cut.q[arc] -= v;
  // r_j = sum_t f_t (theta_t - gamma^j_t) + sum_i u_i (rho^j_i - mu_i)
  // t   = sum_t f_t theta_t - sum_i u_i mu_i
  for (const auto& [ref, th] : w.theta) {
    const Rational f = flow_balance_row(net, ref).rhs;
    for (int j = 0; j < s.m(); ++j) cut.r[j] += f * th;
    cut.t += f * th;
  }
  for (const auto& [key, g] : w.gamma) cut.r[key.first - 1] -= flow_balance_row(net, key.second).rhs * g;
  for (const auto& [key, v] : w.rho) cut.r[key.second - 1] += net.capacity(key.first) * v;
  for (const auto& [arc, v] : w.mu) {
    for (int j = 0; j < s.m(); ++j) cut.r[j] -= net.capacity(arc) * v;
    cut.t -= net.capacity(arc) * v;
  }
  // s_k = -(beta+_k - beta-_k)
  for (const auto& [k, b] : w.beta_plus) cut.s[k] -= b;
  for (const auto& [k, b] : w.beta_minus) cut.s[k] += b;
  drop_zeros(cut);
  return cut;
}

}  // namespace netcut
