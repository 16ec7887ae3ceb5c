#include "netcut/verify.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace netcut {

namespace {

// x in Xi with bounds; objective set later.
struct XiModel {
  LpModel lp;
  std::vector<int> x;
};

XiModel xi_model(const Network& net) {
  XiModel m;
  for (const Arc& a : net.arcs()) {
    m.x.push_back(m.lp.add_variable(0.0, to_double(net.capacity(a.id)), 0.0,
                                    "x" + std::to_string(a.tail) + "_" + std::to_string(a.head)));
  }
  add_xi_rows(m.lp, net, m.x);
  return m;
}

// Point of disjunct d (0: y = 0, j: y = e_j) with z = x y.
Point disjunct_point(const BilinearSet& s, int d, const XiModel& xm, const std::vector<double>& values) {
  Point p;
  const Network& net = s.net();
  for (int a = 0; a < net.num_arcs(); ++a) p.x[net.arcs()[a].id] = values[xm.x[a]];
  p.y.assign(s.m(), 0.0);
  if (d > 0) p.y[d - 1] = 1.0;
  for (const Triple& t : s.triples()) p.z[t.k] = t.j == d ? p.x[t.arc] : 0.0;
  return p;
}

// x coefficients of the cut with z substituted for disjunct d, plus the constant part.
std::vector<double> disjunct_coefs(const LinearCut& cut, const BilinearSet& s, int d, double* constant) {
  const Network& net = s.net();
  std::vector<double> c(net.num_arcs(), 0.0);
  for (const auto& [a, v] : cut.q) c[net.arc_index(a)] += to_double(v);
  for (const auto& [k, v] : cut.s) {
    const Triple& t = s.triple(k);
    if (t.j == d) c[net.arc_index(t.arc)] += to_double(v);
  }
  *constant = -to_double(cut.t);
  if (d > 0 && d <= static_cast<int>(cut.r.size())) *constant += to_double(cut.r[d - 1]);
  return c;
}

}  // namespace

ValidityResult validity_check(const LinearCut& cut, const BilinearSet& s, double tol) {
  ValidityResult res;
  XiModel xm = xi_model(s.net());
  for (int d = 0; d <= s.m(); ++d) {
    double constant = 0.0;
    std::vector<double> c = disjunct_coefs(cut, s, d, &constant);
    for (std::size_t a = 0; a < c.size(); ++a) xm.lp.set_objective(xm.x[a], c[a]);
    LpSolution sol = solve(xm.lp);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) throw NumericalFailure("bounded disjunct LP reported unbounded");
    const double slack = sol.objective + constant;
    if (slack < res.min_slack) {
      res.min_slack = slack;
      res.worst_disjunct = d;
      if (slack < -tol) res.certificate = disjunct_point(s, d, xm, sol.values);
    }
  }
  res.valid = !(res.min_slack < -tol);
  if (res.valid) res.certificate.reset();
  return res;
}

ValidityResult validity_check_extended(const LinearCut& cut, const BilinearSet& s, double tol) {
  ValidityResult res;
  SetModel em = extended_formulation(s);
  const Network& net = s.net();
  for (const auto& [a, v] : cut.q) em.lp.set_objective(em.vars.x[net.arc_index(a)], to_double(v));
  for (std::size_t j = 0; j < cut.r.size(); ++j) em.lp.set_objective(em.vars.y[j], to_double(cut.r[j]));
  for (const auto& [k, v] : cut.s) em.lp.set_objective(em.vars.z[k - 1], to_double(v));
  LpSolution sol = solve(em.lp);
  if (sol.status == LpStatus::kInfeasible) return res;
  if (sol.status != LpStatus::kOptimal) throw NumericalFailure("extended formulation reported unbounded");
  res.min_slack = sol.objective - to_double(cut.t);
  res.valid = res.min_slack >= -tol;
  if (!res.valid) res.certificate = point_from_values(s, em.vars, sol.values);
  return res;
}

HullResult hull_minimum(const BilinearSet& s, const SetObjective& obj) {
  HullResult best;
  const Network& net = s.net();
  XiModel xm = xi_model(net);
  for (int d = 0; d <= s.m(); ++d) {
    std::vector<double> c(net.num_arcs(), 0.0);
    for (const auto& [a, v] : obj.x) c[net.arc_index(a)] += v;
    for (const auto& [k, v] : obj.z) {
      const Triple& t = s.triple(k);
      if (t.j == d) c[net.arc_index(t.arc)] += v;
    }
    double constant = obj.constant;
    if (d > 0 && d <= static_cast<int>(obj.y.size())) constant += obj.y[d - 1];
    for (std::size_t a = 0; a < c.size(); ++a) xm.lp.set_objective(xm.x[a], c[a]);
    LpSolution sol = solve(xm.lp);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) throw NumericalFailure("bounded disjunct LP reported unbounded");
    const double v = sol.objective + constant;
    if (best.status != LpStatus::kOptimal || v < best.value) {
      best.status = LpStatus::kOptimal;
      best.value = v;
      best.point = disjunct_point(s, d, xm, sol.values);
    }
  }
  return best;
}

MipResult mip_optimum(const BilinearMip& mip, int max_log2) {
  if (mip.num_y > max_log2) {
    throw TooLarge(std::to_string(mip.num_y) + " binary variables exceed the enumeration cap");
  }
  const Network& net = mip.net;
  XiModel xm = xi_model(net);
  MipResult best;
  const std::uint64_t total = std::uint64_t{1} << mip.num_y;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    auto on = [&](int j) { return (mask >> (j - 1)) & 1; };
    bool ok = true;
    for (const YRow& r : mip.y_rows) {
      Rational lhs = 0;
      for (const auto& [j, c] : r.coef) {
        if (on(j)) lhs += c;
      }
      ok = ok && (r.type == RowType::kLessEqual      ? lhs <= r.rhs
                  : r.type == RowType::kGreaterEqual ? lhs >= r.rhs
                                                     : lhs == r.rhs);
    }
    if (!ok) continue;
    std::vector<double> c = mip.cost_x;
    double constant = mip.offset;
    for (int j = 1; j <= mip.num_y; ++j) {
      if (on(j)) constant += mip.cost_y[j - 1];
    }
    for (const Triple& t : mip.triples) {
      if (on(t.j)) c[net.arc_index(t.arc)] += mip.cost_z[t.k - 1];
    }
    for (std::size_t a = 0; a < c.size(); ++a) xm.lp.set_objective(xm.x[a], c[a]);
    LpSolution sol = solve(xm.lp);
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) throw NumericalFailure("bounded pattern LP reported unbounded");
    ++best.patterns;
    const double v = sol.objective + constant;
    if (best.status != LpStatus::kOptimal || v < best.value) {
      best.status = LpStatus::kOptimal;
      best.value = v;
      best.y.assign(mip.num_y, 0);
      for (int j = 1; j <= mip.num_y; ++j) best.y[j - 1] = on(j) ? 1 : 0;
    }
  }
  return best;
}

LiftedCheck lifted_hull_check(const Network& net, const LiftedRows& rows, int objectives,
                              std::uint64_t seed, double tol) {
  LiftedCheck out;
  std::vector<Triple> triples;
  for (int a = 0; a < net.num_arcs(); ++a) triples.push_back({a + 1, net.arcs()[a].id, 1});
  BilinearSet full(net, 1, triples);

  // Path A: extended hull of S^1 with z~ = A~ w.
  SetModel em = extended_formulation(full);
  std::vector<int> zt;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    int col = em.lp.add_variable(-kInfinity, kInfinity, 0.0, "zt" + std::to_string(k + 1));
    std::vector<LpTerm> terms = {{col, 1.0}};
    for (const auto& [a, c] : rows[k]) terms.push_back({em.vars.z[net.arc_index(a)], -to_double(c)});
    em.lp.add_row(terms, RowType::kEqual, 0.0, "lift" + std::to_string(k + 1));
    zt.push_back(col);
  }
  // Path B: one LP per value of y.
  XiModel xm = xi_model(net);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int o = 0; o < objectives; ++o) {
    std::vector<double> cx(net.num_arcs());
    for (double& v : cx) v = normal(rng);
    const double cy = normal(rng);
    std::vector<double> cz(rows.size());
    for (double& v : cz) v = normal(rng);

    em.lp.clear_objective();
    for (int a = 0; a < net.num_arcs(); ++a) em.lp.set_objective(em.vars.x[a], cx[a]);
    em.lp.set_objective(em.vars.y[0], cy);
    for (std::size_t k = 0; k < rows.size(); ++k) em.lp.set_objective(zt[k], cz[k]);
    LpSolution a = solve(em.lp);

    std::optional<double> b;
    for (int d = 0; d <= 1; ++d) {
      std::vector<double> c = cx;
      if (d == 1) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
          for (const auto& [arc, coef] : rows[k]) c[net.arc_index(arc)] += cz[k] * to_double(coef);
        }
      }
      for (int i = 0; i < net.num_arcs(); ++i) xm.lp.set_objective(xm.x[i], c[i]);
      LpSolution sol = solve(xm.lp);
      if (sol.status != LpStatus::kOptimal) continue;
      const double v = sol.objective + (d == 1 ? cy : 0.0);
      if (!b || v < *b) b = v;
    }
    ++out.objectives;
    if (a.status != LpStatus::kOptimal || !b) {
      if ((a.status == LpStatus::kOptimal) != b.has_value()) out.pass = false;
      continue;
    }
    const double err = std::abs(a.objective - *b) / std::max(1.0, std::abs(*b));
    out.max_rel_error = std::max(out.max_rel_error, err);
    if (err > tol) out.pass = false;
  }
  return out;
}

TightnessReport tightness_report(const LinearCut& cut, const BilinearSet& s, int samples,
                                 std::uint64_t seed, double tol) {
  TightnessReport rep;
  rep.affine_rank = -1;
  ValidityResult v = validity_check(cut, s, tol);
  if (!v.valid) return rep;
  rep.valid = true;
  const Network& net = s.net();
  const int n = net.num_arcs();
  const int dim = n + s.m() + s.num_triples();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::set<std::vector<long long>> seen;
  std::vector<Eigen::VectorXd> pts;
  auto collect = [&](const Point& p) {
    Eigen::VectorXd vec(dim);
    int i = 0;
    for (const Arc& a : net.arcs()) vec[i++] = p.x.at(a.id);
    for (double y : p.y) vec[i++] = y;
    for (const Triple& t : s.triples()) vec[i++] = p.z.at(t.k);
    std::vector<long long> key(dim);
    for (int d = 0; d < dim; ++d) key[d] = std::llround(vec[d] * 1e6);
    if (seen.insert(key).second) pts.push_back(vec);
  };

  for (int d = 0; d <= s.m(); ++d) {
    XiModel xm = xi_model(net);
    double constant = 0.0;
    std::vector<double> c = disjunct_coefs(cut, s, d, &constant);
    for (int a = 0; a < n; ++a) xm.lp.set_objective(xm.x[a], c[a]);
    LpSolution low = solve(xm.lp);
    if (low.status != LpStatus::kOptimal || low.objective + constant > tol) continue;
    std::vector<LpTerm> face;
    for (int a = 0; a < n; ++a) face.push_back({xm.x[a], c[a]});
    xm.lp.add_row(face, RowType::kLessEqual, -constant, "face");
    collect(disjunct_point(s, d, xm, low.values));
    for (int k = 0; k < samples; ++k) {
      for (int a = 0; a < n; ++a) xm.lp.set_objective(xm.x[a], normal(rng));
      LpSolution sol = solve(xm.lp);
      if (sol.status == LpStatus::kOptimal) collect(disjunct_point(s, d, xm, sol.values));
    }
  }
  rep.points = static_cast<int>(pts.size());
  if (pts.empty()) return rep;
  if (pts.size() == 1) {
    rep.affine_rank = 0;
    return rep;
  }
  Eigen::MatrixXd diff(pts.size() - 1, dim);
  for (std::size_t i = 1; i < pts.size(); ++i) diff.row(i - 1) = (pts[i] - pts[0]).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diff);
  lu.setThreshold(1e-7);
  rep.affine_rank = static_cast<int>(lu.rank());
  return rep;
}

}  // namespace netcut
