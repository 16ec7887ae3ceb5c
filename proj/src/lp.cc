#include "netcut/lp.h"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <istream>
#include <ostream>
#include <sstream>

namespace netcut {

int LpModel::add_variable(double lb, double ub, double obj, std::string name) {
  if (lb > ub) throw std::invalid_argument("variable bounds crossed");
  if (!std::isfinite(obj)) throw std::invalid_argument("objective must be finite");
  lb_.push_back(lb);
  ub_.push_back(ub);
  obj_.push_back(obj);
  if (name.empty()) name = "v" + std::to_string(lb_.size() - 1);
  names_.push_back(std::move(name));
  return num_variables() - 1;
}

int LpModel::add_row(std::vector<LpTerm> terms, RowType type, double rhs, std::string name) {
  std::map<int, double> merged;
  for (const LpTerm& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("row references undeclared variable");
    }
    merged[t.var] += t.coef;
  }
  LpRow row;
  for (const auto& [v, c] : merged) {
    if (c != 0.0) row.terms.push_back({v, c});
  }
  row.type = type;
  row.rhs = rhs;
  row.name = name.empty() ? "r" + std::to_string(rows_.size()) : std::move(name);
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LpModel::set_bounds(int var, double lb, double ub) {
  if (lb > ub) throw std::invalid_argument("variable bounds crossed");
  lb_.at(var) = lb;
  ub_.at(var) = ub;
}

void LpModel::clear_objective() {
  std::fill(obj_.begin(), obj_.end(), 0.0);
  offset_ = 0.0;
}

namespace {

void write_number(std::ostream& os, double v) {
  if (v == kInfinity) {
    os << "inf";
  } else if (v == -kInfinity) {
    os << "-inf";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  }
}

}  // namespace

void LpModel::write(std::ostream& os) const {
  os << "lp " << (sense_ == ObjSense::kMinimize ? "min" : "max") << "\n";
  os << "offset ";
  write_number(os, offset_);
  os << "\nvars " << num_variables() << "\n";
  for (int j = 0; j < num_variables(); ++j) {
    os << "var " << j << " " << (names_[j].empty() ? "_" : names_[j]) << " ";
    write_number(os, lb_[j]);
    os << " ";
    write_number(os, ub_[j]);
    os << " ";
    write_number(os, obj_[j]);
    os << "\n";
  }
  os << "rows " << num_rows() << "\n";
  for (int i = 0; i < num_rows(); ++i) {
    const LpRow& r = rows_[i];
    const char* t = r.type == RowType::kLessEqual ? "L" : r.type == RowType::kGreaterEqual ? "G" : "E";
    os << "row " << i << " " << (r.name.empty() ? "_" : r.name) << " " << t << " ";
    write_number(os, r.rhs);
    os << " " << r.terms.size();
    for (const LpTerm& term : r.terms) {
      os << " " << term.var << ":";
      write_number(os, term.coef);
    }
    os << "\n";
  }
  os << "end\n";
}

namespace {

double read_number(const std::string& tok) {
  if (tok == "inf") return kInfinity;
  if (tok == "-inf") return -kInfinity;
  std::size_t pos = 0;
  double v = std::stod(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

void expect(std::istream& is, const std::string& word) {
  std::string tok;
  if (!(is >> tok) || tok != word) {
    throw std::invalid_argument("expected '" + word + "', got '" + tok + "'");
  }
}

}  // namespace

LpModel LpModel::read(std::istream& is) {
  LpModel m;
  std::string tok;
  expect(is, "lp");
  is >> tok;
  if (tok != "min" && tok != "max") throw std::invalid_argument("bad sense '" + tok + "'");
  m.set_sense(tok == "min" ? ObjSense::kMinimize : ObjSense::kMaximize);
  expect(is, "offset");
  is >> tok;
  m.set_objective_offset(read_number(tok));
  expect(is, "vars");
  int nv = 0;
  is >> nv;
  for (int j = 0; j < nv; ++j) {
    std::string idx, name, lb, ub, obj;
    expect(is, "var");
    is >> idx >> name >> lb >> ub >> obj;
    if (!is || std::stoi(idx) != j) throw std::invalid_argument("bad var record");
    m.add_variable(read_number(lb), read_number(ub), read_number(obj), name == "_" ? "" : name);
  }
  expect(is, "rows");
  int nr = 0;
  is >> nr;
  for (int i = 0; i < nr; ++i) {
    std::string idx, name, type, rhs;
    int nnz = 0;
    expect(is, "row");
    is >> idx >> name >> type >> rhs >> nnz;
    if (!is || std::stoi(idx) != i) throw std::invalid_argument("bad row record");
    std::vector<LpTerm> terms;
    for (int e = 0; e < nnz; ++e) {
      is >> tok;
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("bad term '" + tok + "'");
      int var = std::stoi(tok.substr(0, colon));
      if (var < 0 || var >= nv) throw std::invalid_argument("term references unknown variable");
      terms.push_back({var, read_number(tok.substr(colon + 1))});
    }
    RowType rt = type == "L" ? RowType::kLessEqual : type == "G" ? RowType::kGreaterEqual : RowType::kEqual;
    if (type != "L" && type != "G" && type != "E") throw std::invalid_argument("bad row type");
    m.add_row(std::move(terms), rt, read_number(rhs), name == "_" ? "" : name);
  }
  expect(is, "end");
  return m;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

double max_violation(const LpModel& model, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    worst = std::max(worst, model.lower(j) - x[j]);
    worst = std::max(worst, x[j] - model.upper(j));
  }
  for (int i = 0; i < model.num_rows(); ++i) {
    const LpRow& r = model.row(i);
    double act = 0.0;
    for (const LpTerm& t : r.terms) act += t.coef * x[t.var];
    if (r.type != RowType::kGreaterEqual) worst = std::max(worst, act - r.rhs);
    if (r.type != RowType::kLessEqual) worst = std::max(worst, r.rhs - act);
  }
  return worst;
}

double objective_value(const LpModel& model, const std::vector<double>& x) {
  double v = model.objective_offset();
  for (int j = 0; j < model.num_variables(); ++j) v += model.objective(j) * x[j];
  return v;
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vec = Eigen::VectorXd;

constexpr int kRefactorEvery = 64;
constexpr int kStallLimit = 60;
constexpr double kPivotTol = 1e-9;
constexpr double kHarrisTol = 1e-9;
constexpr double kZeroTol = 1e-13;
constexpr double kPerturb = 1e-7;

enum class NbState { kBasic, kAtLower, kAtUpper, kFree, kFixed };

// Revised bounded-variable primal simplex on [A  -I] z = 0 with bounds on z.
// The basis inverse is an LU factorization plus a product-form eta file.
class Simplex {
 public:
  Simplex(const LpModel& model, const LpOptions& opts) : model_(model), opts_(opts) {
    n_ = model.num_variables();
    m_ = model.num_rows();
    cols_.assign(n_, {});
    for (int i = 0; i < m_; ++i) {
      for (const LpTerm& t : model.row(i).terms) cols_[t.var].push_back({i, t.coef});
    }
    const double sgn = model.sense() == ObjSense::kMinimize ? 1.0 : -1.0;
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    cost_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = model.lower(j);
      ub_[j] = model.upper(j);
      cost_[j] = sgn * model.objective(j);
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = model.row(i);
      lb_[n_ + i] = r.type == RowType::kLessEqual ? -kInfinity : r.rhs;
      ub_[n_ + i] = r.type == RowType::kGreaterEqual ? kInfinity : r.rhs;
    }
  }

  LpSolution run() {
    LpSolution sol;
    crash();
    const long cap = 50L * (n_ + m_) + 1000;
    int attempts = 0;
    while (true) {
      LpStatus status = iterate(cap);
      sol.status = status;
      if (perturbed_) {
        unperturb();
        if (status == LpStatus::kOptimal) continue;
      }
      if (status != LpStatus::kOptimal) break;
      // Clean recomputation; resume if drift left the point infeasible.
      refactor();
      std::vector<double> x(val_.begin(), val_.begin() + n_);
      double viol = max_violation(model_, x);
      if (viol <= opts_.feas_tol) break;
      if (++attempts > 3) {
        throw NumericalFailure("simplex ended with primal violation " + std::to_string(viol));
      }
    }
    sol.iterations = iters_;
    sol.values.assign(val_.begin(), val_.begin() + n_);
    sol.max_violation = max_violation(model_, sol.values);
    sol.objective = objective_value(model_, sol.values);
    if (sol.status == LpStatus::kOptimal && m_ > 0) {
      Vec cb(m_);
      for (int p = 0; p < m_; ++p) cb[p] = cost_[basis_[p]];
      Vec pi = btran(cb);
      row_duals_.assign(pi.data(), pi.data() + m_);
    }
    return sol;
  }

  // Row prices of the internal minimization at the last optimum.
  const std::vector<double>& row_duals() const { return row_duals_; }

 private:
  // Column j of [A -I] scattered into a dense vector.
  void column(int j, Vec& out) const {
    out.setZero(m_);
    if (j < n_) {
      for (const auto& [i, a] : cols_[j]) out[i] = a;
    } else {
      out[j - n_] = -1.0;
    }
  }

  double dot_column(int j, const Vec& pi) const {
    if (j >= n_) return -pi[j - n_];
    double s = 0.0;
    for (const auto& [i, a] : cols_[j]) s += a * pi[i];
    return s;
  }

  void crash() {
    weight_.assign(n_ + m_, 1.0);
    state_.assign(n_ + m_, NbState::kAtLower);
    val_.assign(n_ + m_, 0.0);
    pos_.assign(n_ + m_, -1);
    basis_.resize(m_);
    for (int j = 0; j < n_; ++j) place_nonbasic(j, 0.0);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      pos_[n_ + i] = i;
      state_[n_ + i] = NbState::kBasic;
    }
    refactor();
  }

  // Puts j at the bound nearest `hint`.
  void place_nonbasic(int j, double hint) {
    pos_[j] = -1;
    const double lo = lb_[j], hi = ub_[j];
    if (lo == hi) {
      state_[j] = NbState::kFixed;
      val_[j] = lo;
    } else if (std::isfinite(lo) && std::isfinite(hi)) {
      bool lower = std::abs(hint - lo) <= std::abs(hint - hi);
      state_[j] = lower ? NbState::kAtLower : NbState::kAtUpper;
      val_[j] = lower ? lo : hi;
    } else if (std::isfinite(lo)) {
      state_[j] = NbState::kAtLower;
      val_[j] = lo;
    } else if (std::isfinite(hi)) {
      state_[j] = NbState::kAtUpper;
      val_[j] = hi;
    } else {
      state_[j] = NbState::kFree;
      val_[j] = 0.0;
    }
  }

  bool factorize() {
    SpMat b(m_, m_);
    std::vector<Eigen::Triplet<double>> trip;
    for (int p = 0; p < m_; ++p) {
      int j = basis_[p];
      if (j < n_) {
        for (const auto& [i, a] : cols_[j]) trip.emplace_back(i, p, a);
      } else {
        trip.emplace_back(j - n_, p, -1.0);
      }
    }
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    // Transposed solves through SparseLU are slow; keep a factorization of B^T too.
    SpMat bt = b.transpose();
    bt.makeCompressed();
    lut_.analyzePattern(bt);
    lut_.factorize(bt);
    etas_.clear();
    return lu_.info() == Eigen::Success && lut_.info() == Eigen::Success;
  }

  void refactor() {
    if (m_ == 0) {
      etas_.clear();
      return;
    }
    if (!factorize()) {
      // Singular basis: fall back to the all-logical basis and let phase 1 recover.
      for (int p = 0; p < m_; ++p) {
        int j = basis_[p];
        if (j < n_) place_nonbasic(j, val_[j]);
      }
      for (int i = 0; i < m_; ++i) {
        basis_[i] = n_ + i;
        pos_[n_ + i] = i;
        state_[n_ + i] = NbState::kBasic;
      }
      if (!factorize()) throw NumericalFailure("cannot factorize slack basis");
    }
    // Basic values from B z_B = -N z_N.
    Vec rhs = Vec::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (pos_[j] >= 0 || val_[j] == 0.0) continue;
      if (j < n_) {
        for (const auto& [i, a] : cols_[j]) rhs[i] -= a * val_[j];
      } else {
        rhs[j - n_] += val_[j];
      }
    }
    Vec zb = ftran(rhs);
    for (int p = 0; p < m_; ++p) val_[basis_[p]] = zb[p];
  }

  Vec ftran(const Vec& v) {
    Vec x = lu_.solve(v);
    for (const Eta& e : etas_) {
      double xp = x[e.p] / e.pivot;
      x[e.p] = xp;
      if (xp != 0.0) {
        for (const auto& [i, a] : e.col) x[i] -= a * xp;
      }
    }
    return x;
  }

  Vec btran(Vec c) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = c[it->p];
      for (const auto& [i, a] : it->col) s -= a * c[i];
      c[it->p] = s / it->pivot;
    }
    return lut_.solve(c);
  }

  bool infeasible_below(int j) const { return val_[j] < lb_[j] - opts_.feas_tol; }
  bool infeasible_above(int j) const { return val_[j] > ub_[j] + opts_.feas_tol; }

  LpStatus iterate(long cap) {
    Vec cb(m_), col(m_);
    int stall = 0;
    bool bland = false;
    while (true) {
      if (iters_ > cap) throw NumericalFailure("simplex iteration cap exceeded");
      if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactor();

      bool phase1 = false;
      for (int p = 0; p < m_; ++p) {
        int b = basis_[p];
        if (infeasible_below(b)) {
          cb[p] = -1.0;
          phase1 = true;
        } else if (infeasible_above(b)) {
          cb[p] = 1.0;
          phase1 = true;
        } else {
          cb[p] = 0.0;
        }
      }
      if (!phase1) {
        for (int p = 0; p < m_; ++p) cb[p] = cost_[basis_[p]];
      }
      Vec pi = m_ > 0 ? btran(cb) : Vec();

      // Pricing.
      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        NbState st = state_[j];
        if (st == NbState::kBasic || st == NbState::kFixed) continue;
        const double d = (phase1 ? 0.0 : cost_[j]) - (m_ > 0 ? dot_column(j, pi) : 0.0);
        int jdir = 0;
        if (st == NbState::kAtLower && d < -opts_.opt_tol) jdir = 1;
        if (st == NbState::kAtUpper && d > opts_.opt_tol) jdir = -1;
        if (st == NbState::kFree && std::abs(d) > opts_.opt_tol) jdir = d < 0 ? 1 : -1;
        if (jdir == 0) continue;
        if (bland) {
          enter = j;
          dir = jdir;
          break;
        }
        const double score = d * d / weight_[j];
        if (score > best) {
          best = score;
          enter = j;
          dir = jdir;
        }
      }
      if (enter < 0) return phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;

      column(enter, col);
      Vec alpha = m_ > 0 ? ftran(col) : Vec();

      // Harris ratio test; rate of basic p is -dir * alpha_p.
      auto limit = [&](int p, double slack_tol, double* theta, double* bound_hit) -> bool {
        double rate = -dir * alpha[p];
        if (std::abs(alpha[p]) <= kPivotTol) return false;
        int b = basis_[p];
        double v = val_[b];
        double bound;
        if (rate > 0) {
          if (infeasible_above(b)) return false;
          bound = infeasible_below(b) ? lb_[b] : ub_[b];
          if (!std::isfinite(bound)) return false;
          *theta = (bound + slack_tol - v) / rate;
        } else {
          if (infeasible_below(b)) return false;
          bound = infeasible_above(b) ? ub_[b] : lb_[b];
          if (!std::isfinite(bound)) return false;
          *theta = (bound - slack_tol - v) / rate;
        }
        *bound_hit = bound;
        return true;
      };
      double theta_max = kInfinity;
      for (int p = 0; p < m_; ++p) {
        double th, bd;
        if (limit(p, kHarrisTol, &th, &bd)) theta_max = std::min(theta_max, th);
      }
      int leave = -1;
      double theta = kInfinity;
      double leave_bound = 0.0;
      if (std::isfinite(theta_max)) {
        double best_piv = -1.0;
        for (int p = 0; p < m_; ++p) {
          double th, bd;
          if (!limit(p, 0.0, &th, &bd) || th > theta_max) continue;
          if (bland) {
            if (leave < 0 || th < theta - kZeroTol ||
                (th <= theta + kZeroTol && basis_[p] < basis_[leave])) {
              leave = p;
              theta = th;
              leave_bound = bd;
            }
          } else if (std::abs(alpha[p]) > best_piv) {
            best_piv = std::abs(alpha[p]);
            leave = p;
            theta = th;
            leave_bound = bd;
          }
        }
        theta = std::max(theta, 0.0);
      }
      double flip = ub_[enter] - lb_[enter];
      bool do_flip = std::isfinite(flip) && (leave < 0 || flip <= theta);
      if (leave < 0 && !do_flip) {
        if (phase1) throw NumericalFailure("unbounded phase-1 direction");
        return LpStatus::kUnbounded;
      }
      if (do_flip) theta = flip;
      ++iters_;

      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) val_[basis_[p]] -= dir * theta * alpha[p];
      }
      val_[enter] += dir * theta;

      if (theta > 1e-11) {
        stall = 0;
        bland = false;
      } else if (++stall > kStallLimit) {
        // First remedy is a one-off widening of the bounds; Bland's rule after that.
        if (!perturb_used_) {
          stall = 0;
          perturb_pending_ = true;
        } else {
          bland = true;
        }
      }

      if (do_flip) {
        state_[enter] = dir > 0 ? NbState::kAtUpper : NbState::kAtLower;
        val_[enter] = dir > 0 ? ub_[enter] : lb_[enter];
        if (perturb_pending_) perturb();
        continue;
      }

      int out = basis_[leave];
      double target = leave_bound;
      pos_[out] = -1;
      if (lb_[out] == ub_[out]) {
        state_[out] = NbState::kFixed;
      } else {
        state_[out] = target == lb_[out] ? NbState::kAtLower : NbState::kAtUpper;
      }
      val_[out] = target;

      update_weights(enter, leave, alpha[leave]);

      Eta eta;
      eta.p = leave;
      eta.pivot = alpha[leave];
      for (int p = 0; p < m_; ++p) {
        if (p != leave && std::abs(alpha[p]) > kZeroTol) eta.col.push_back({p, alpha[p]});
      }
      etas_.push_back(std::move(eta));
      basis_[leave] = enter;
      pos_[enter] = leave;
      state_[enter] = NbState::kBasic;
      if (perturb_pending_) perturb();
    }
  }

  // Devex reference weights; alpha_r is the pivot row of B^-1 [A -I].
  void update_weights(int enter, int leave, double pivot) {
    Vec e = Vec::Zero(m_);
    e[leave] = 1.0;
    Vec rho = btran(e);
    const double wq = weight_[enter];
    double largest = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == NbState::kBasic || j == enter) continue;
      const double ar = dot_column(j, rho);
      if (ar == 0.0) continue;
      const double r = ar / pivot;
      weight_[j] = std::max(weight_[j], r * r * wq);
      largest = std::max(largest, weight_[j]);
    }
    weight_[basis_[leave]] = std::max(wq / (pivot * pivot), 1.0);
    if (largest > 1e8) std::fill(weight_.begin(), weight_.end(), 1.0);
  }

  // Widens every non-fixed finite bound by a small random amount so that
  // degenerate vertices split; nonbasic values follow their bounds.
  void perturb() {
    perturb_pending_ = false;
    perturb_used_ = true;
    perturbed_ = true;
    orig_lb_ = lb_;
    orig_ub_ = ub_;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(0.5, 1.0);
    for (int j = 0; j < n_ + m_; ++j) {
      if (lb_[j] == ub_[j]) continue;
      if (std::isfinite(lb_[j])) lb_[j] -= kPerturb * (1.0 + std::abs(lb_[j])) * unit(rng);
      if (std::isfinite(ub_[j])) ub_[j] += kPerturb * (1.0 + std::abs(ub_[j])) * unit(rng);
      if (state_[j] == NbState::kAtLower) val_[j] = lb_[j];
      if (state_[j] == NbState::kAtUpper) val_[j] = ub_[j];
    }
    refactor();
  }

  void unperturb() {
    perturbed_ = false;
    lb_ = orig_lb_;
    ub_ = orig_ub_;
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == NbState::kAtLower) val_[j] = lb_[j];
      if (state_[j] == NbState::kAtUpper) val_[j] = ub_[j];
    }
    refactor();
  }

  struct Eta {
    int p;
    double pivot;
    std::vector<std::pair<int, double>> col;
  };

  const LpModel& model_;
  LpOptions opts_;
  int n_ = 0, m_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lb_, ub_, cost_, val_;
  std::vector<NbState> state_;
  std::vector<int> basis_, pos_;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_, lut_;
  std::vector<Eta> etas_;
  long iters_ = 0;
  bool perturb_pending_ = false, perturb_used_ = false, perturbed_ = false;
  std::vector<double> orig_lb_, orig_ub_;
  std::vector<double> row_duals_;
  std::vector<double> weight_;
};

// Builds  max b.pi + l.alpha - u.beta  s.t.  A^T pi + alpha - beta = c  and reads the
// primal point off its row prices. Empty when the dual gives no usable answer.
std::optional<LpSolution> solve_via_dual(const LpModel& model, const LpOptions& opts) {
  const int n = model.num_variables();
  const int m = model.num_rows();
  const double sgn = model.sense() == ObjSense::kMinimize ? 1.0 : -1.0;
  LpModel dual;
  dual.set_sense(ObjSense::kMaximize);
  std::vector<std::vector<LpTerm>> rows(n);
  for (int i = 0; i < m; ++i) {
    const LpRow& r = model.row(i);
    const double lo = r.type == RowType::kLessEqual ? -kInfinity : 0.0;
    const double hi = r.type == RowType::kGreaterEqual ? kInfinity : 0.0;
    const int v = dual.add_variable(lo, hi, r.rhs);
    for (const LpTerm& t : r.terms) rows[t.var].push_back({v, t.coef});
  }
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(model.lower(j))) rows[j].push_back({dual.add_variable(0.0, kInfinity, model.lower(j)), 1.0});
    if (std::isfinite(model.upper(j))) rows[j].push_back({dual.add_variable(0.0, kInfinity, -model.upper(j)), -1.0});
  }
  for (int j = 0; j < n; ++j) dual.add_row(rows[j], RowType::kEqual, sgn * model.objective(j));

  LpOptions inner = opts;
  inner.dualize_ratio = 0.0;
  Simplex simplex(dual, inner);
  LpSolution d;
  try {
    d = simplex.run();
  } catch (const NumericalFailure&) {
    return std::nullopt;
  }
  LpSolution sol;
  sol.iterations = d.iterations;
  if (d.status == LpStatus::kUnbounded) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  if (d.status != LpStatus::kOptimal) return std::nullopt;
  const std::vector<double>& pi = simplex.row_duals();
  if (static_cast<int>(pi.size()) != n) return std::nullopt;
  sol.values.resize(n);
  for (int j = 0; j < n; ++j) sol.values[j] = std::clamp(-pi[j], model.lower(j), model.upper(j));
  sol.max_violation = max_violation(model, sol.values);
  sol.objective = objective_value(model, sol.values);
  const double dual_obj = sgn * (d.objective + model.objective_offset() * sgn);
  const double scale = 1.0 + std::abs(sol.objective);
  if (sol.max_violation > 10 * opts.feas_tol || std::abs(sol.objective - dual_obj) > 1e-6 * scale) {
    return std::nullopt;
  }
  sol.status = LpStatus::kOptimal;
  return sol;
}

}  // namespace

LpSolution solve(const LpModel& model, const LpOptions& opts) {
  if (opts.dualize_ratio > 0 && model.num_variables() > 0 &&
      model.num_rows() > opts.dualize_ratio * model.num_variables()) {
    if (auto sol = solve_via_dual(model, opts)) return *sol;
  }
  Simplex simplex(model, opts);
  return simplex.run();
}

}  // namespace netcut
