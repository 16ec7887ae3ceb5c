#ifndef NETCUT_LP_H_
#define NETCUT_LP_H_

#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace netcut {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ObjSense { kMinimize, kMaximize };
enum class RowType { kLessEqual, kGreaterEqual, kEqual };

struct LpTerm {
  int var;
  double coef;
};

struct LpRow {
  std::vector<LpTerm> terms;
  RowType type;
  double rhs;
  std::string name;
};

class LpModel {
 public:
  int add_variable(double lb, double ub, double obj = 0.0, std::string name = "");
  // Duplicate variables are merged and zero coefficients dropped.
  int add_row(std::vector<LpTerm> terms, RowType type, double rhs, std::string name = "");

  void set_objective(int var, double c) { obj_.at(var) = c; }
  void set_objective_offset(double c) { offset_ = c; }
  void set_bounds(int var, double lb, double ub);
  void set_sense(ObjSense s) { sense_ = s; }
  void clear_objective();

  int num_variables() const { return static_cast<int>(lb_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  double lower(int var) const { return lb_[var]; }
  double upper(int var) const { return ub_[var]; }
  double objective(int var) const { return obj_[var]; }
  double objective_offset() const { return offset_; }
  ObjSense sense() const { return sense_; }
  const std::string& name(int var) const { return names_[var]; }
  const LpRow& row(int r) const { return rows_[r]; }

  // Plain-text dump, one record per line, in declaration order.
  void write(std::ostream& os) const;
  // Parses the format produced by write().
  static LpModel read(std::istream& is);

 private:
  std::vector<double> lb_, ub_, obj_;
  std::vector<std::string> names_;
  std::vector<LpRow> rows_;
  double offset_ = 0.0;
  ObjSense sense_ = ObjSense::kMinimize;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  // Largest bound or row violation of `values`.
  double max_violation = 0.0;
  long iterations = 0;
};

struct LpOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  // Solve the dual instead when rows outnumber columns by this factor (0 disables).
  double dualize_ratio = 2.0;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LpSolution solve(const LpModel& model, const LpOptions& opts = {});

double max_violation(const LpModel& model, const std::vector<double>& x);
double objective_value(const LpModel& model, const std::vector<double>& x);

}  // namespace netcut

#endif  // NETCUT_LP_H_
