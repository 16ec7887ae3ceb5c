#include "netcut/model.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace netcut {

namespace {

std::string arc_label(const Network& net, ArcId a) {
  const Arc& arc = net.arc(a);
  return std::to_string(arc.tail) + "_" + std::to_string(arc.head) + "_" + std::to_string(a);
}

void check_triples(const Network& net, int m, std::vector<Triple>& triples,
                   std::map<std::pair<ArcId, int>, int>* by_pair) {
  std::sort(triples.begin(), triples.end(),
            [](const Triple& a, const Triple& b) { return a.k < b.k; });
  for (std::size_t idx = 0; idx < triples.size(); ++idx) {
    const Triple& t = triples[idx];
    if (t.k != static_cast<int>(idx) + 1) {
      throw std::invalid_argument("triple ids must be 1..kappa without gaps");
    }
    if (!net.has_arc(t.arc)) throw std::invalid_argument("triple on unknown arc");
    if (t.j < 1 || t.j > m) throw std::invalid_argument("triple y index out of range");
    if (!by_pair->emplace(std::make_pair(t.arc, t.j), t.k).second) {
      throw std::invalid_argument("duplicate (arc, j) pair in triples");
    }
  }
}

}  // namespace

BilinearSet::BilinearSet(Network net, int m, std::vector<Triple> triples)
    : net_(std::move(net)), m_(m), triples_(std::move(triples)) {
  if (m_ < 0) throw std::invalid_argument("negative m");
  check_triples(net_, m_, triples_, &by_pair_);
}

const Triple& BilinearSet::triple(int k) const {
  if (k < 1 || k > num_triples()) throw NotFound("unknown triple " + std::to_string(k));
  return triples_[k - 1];
}

std::optional<int> BilinearSet::triple_for(ArcId arc, int j) const {
  auto it = by_pair_.find({arc, j});
  if (it == by_pair_.end()) return std::nullopt;
  return it->second;
}

Point point_from_values(const BilinearSet& s, const VarLayout& vars,
                        const std::vector<double>& values) {
  Point p;
  const Network& net = s.net();
  for (int a = 0; a < net.num_arcs(); ++a) p.x[net.arcs()[a].id] = values[vars.x[a]];
  p.y.resize(s.m());
  for (int j = 0; j < s.m(); ++j) p.y[j] = values[vars.y[j]];
  for (const Triple& t : s.triples()) p.z[t.k] = values[vars.z[t.k - 1]];
  return p;
}

void add_xi_rows(LpModel& lp, const Network& net, const std::vector<int>& xcol,
                 const std::string& prefix) {
  std::vector<NodeId> nodes = net.nodes();
  std::sort(nodes.begin(), nodes.end());
  for (NodeId v : nodes) {
    std::vector<LpTerm> terms;
    for (ArcId a : net.out_arcs(v)) terms.push_back({xcol[net.arc_index(a)], 1.0});
    for (ArcId a : net.in_arcs(v)) terms.push_back({xcol[net.arc_index(a)], -1.0});
    const double f = to_double(net.supply(v));
    const std::string name = prefix + std::to_string(v);
    switch (net.sense(v)) {
      case RowSense::kBoth:
        lp.add_row(terms, RowType::kEqual, f, name);
        break;
      case RowSense::kPlusOnly:
        lp.add_row(terms, RowType::kGreaterEqual, f, name);
        break;
      case RowSense::kMinusOnly:
        lp.add_row(terms, RowType::kLessEqual, f, name);
        break;
    }
  }
}

namespace {

// x in [0,u], y in [0,1], z free with the McCormick rows carrying the bounds.
VarLayout add_xyz(LpModel& lp, const Network& net, int m, const std::vector<Triple>& triples,
                  const char* yname = "y") {
  VarLayout v;
  for (const Arc& a : net.arcs()) {
    v.x.push_back(lp.add_variable(0.0, to_double(net.capacity(a.id)), 0.0, "x" + arc_label(net, a.id)));
  }
  for (int j = 1; j <= m; ++j) {
    v.y.push_back(lp.add_variable(0.0, 1.0, 0.0, yname + std::to_string(j)));
  }
  for (const Triple& t : triples) {
    v.z.push_back(lp.add_variable(-kInfinity, kInfinity, 0.0, "z" + std::to_string(t.k)));
  }
  return v;
}

void add_mccormick_rows(LpModel& lp, const Network& net, const VarLayout& v,
                        const std::vector<Triple>& triples) {
  for (const Triple& t : triples) {
    const int x = v.x[net.arc_index(t.arc)];
    const int y = v.y[t.j - 1];
    const int z = v.z[t.k - 1];
    const double u = to_double(net.capacity(t.arc));
    const std::string tag = std::to_string(t.k);
    lp.add_row({{z, 1.0}}, RowType::kGreaterEqual, 0.0, "mc_lo0_" + tag);
    lp.add_row({{z, 1.0}, {y, -u}, {x, -1.0}}, RowType::kGreaterEqual, -u, "mc_lo1_" + tag);
    lp.add_row({{z, 1.0}, {y, -u}}, RowType::kLessEqual, 0.0, "mc_up0_" + tag);
    lp.add_row({{z, 1.0}, {x, -1.0}}, RowType::kLessEqual, 0.0, "mc_up1_" + tag);
  }
}

void add_simplex_row(LpModel& lp, const VarLayout& v) {
  if (v.y.size() < 2) return;
  std::vector<LpTerm> terms;
  for (int y : v.y) terms.push_back({y, 1.0});
  lp.add_row(terms, RowType::kLessEqual, 1.0, "simplex");
}

}  // namespace

SetModel mccormick(const BilinearSet& s) {
  SetModel out;
  out.vars = add_xyz(out.lp, s.net(), s.m(), s.triples());
  add_xi_rows(out.lp, s.net(), out.vars.x);
  add_simplex_row(out.lp, out.vars);
  add_mccormick_rows(out.lp, s.net(), out.vars, s.triples());
  return out;
}

SetModel extended_formulation(const BilinearSet& s) {
  SetModel out;
  LpModel& lp = out.lp;
  const Network& net = s.net();
  const int n = net.num_arcs();
  const int m = s.m();
  out.vars = add_xyz(lp, net, m, s.triples());
  add_simplex_row(lp, out.vars);
  std::vector<std::vector<int>> w(m, std::vector<int>(n));
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < n; ++a) {
      w[j][a] = lp.add_variable(0.0, kInfinity, 0.0,
                                "w" + std::to_string(j + 1) + "_" + arc_label(net, net.arcs()[a].id));
    }
  }
  // v^j_k = A^k_j w^j and z_k = sum_j v^j_k.
  for (const Triple& t : s.triples()) {
    std::vector<LpTerm> zsum = {{out.vars.z[t.k - 1], 1.0}};
    for (int j = 1; j <= m; ++j) {
      int v = lp.add_variable(-kInfinity, kInfinity, 0.0,
                              "v" + std::to_string(j) + "_" + std::to_string(t.k));
      std::vector<LpTerm> link = {{v, 1.0}};
      if (j == t.j) link.push_back({w[j - 1][net.arc_index(t.arc)], -1.0});
      lp.add_row(link, RowType::kEqual, 0.0, "vlink" + std::to_string(j) + "_" + std::to_string(t.k));
      zsum.push_back({v, -1.0});
    }
    lp.add_row(zsum, RowType::kEqual, 0.0, "zsum" + std::to_string(t.k));
  }
  // E w^j >= f y_j and E (x - sum w) >= f (1 - sum y).
  std::vector<NodeId> nodes = net.nodes();
  std::sort(nodes.begin(), nodes.end());
  auto type_of = [&](NodeId v) {
    switch (net.sense(v)) {
      case RowSense::kBoth:
        return RowType::kEqual;
      case RowSense::kPlusOnly:
        return RowType::kGreaterEqual;
      case RowSense::kMinusOnly:
        return RowType::kLessEqual;
    }
    return RowType::kEqual;
  };
  for (NodeId v : nodes) {
    const double f = to_double(net.supply(v));
    std::vector<std::pair<int, double>> inc;
    for (ArcId a : net.out_arcs(v)) inc.push_back({net.arc_index(a), 1.0});
    for (ArcId a : net.in_arcs(v)) inc.push_back({net.arc_index(a), -1.0});
    for (int j = 0; j < m; ++j) {
      std::vector<LpTerm> terms;
      for (auto [a, c] : inc) terms.push_back({w[j][a], c});
      terms.push_back({out.vars.y[j], -f});
      lp.add_row(terms, type_of(v), 0.0, "balw" + std::to_string(j + 1) + "_" + std::to_string(v));
    }
    std::vector<LpTerm> terms;
    for (auto [a, c] : inc) {
      terms.push_back({out.vars.x[a], c});
      for (int j = 0; j < m; ++j) terms.push_back({w[j][a], -c});
    }
    for (int j = 0; j < m; ++j) terms.push_back({out.vars.y[j], f});
    lp.add_row(terms, type_of(v), f, "balr_" + std::to_string(v));
  }
  // 0 <= w^j <= u y_j and 0 <= x - sum w <= u (1 - sum y).
  for (int a = 0; a < n; ++a) {
    const double u = to_double(net.capacity(net.arcs()[a].id));
    for (int j = 0; j < m; ++j) {
      lp.add_row({{w[j][a], 1.0}, {out.vars.y[j], -u}}, RowType::kLessEqual, 0.0,
                 "wub" + std::to_string(j + 1) + "_" + std::to_string(a));
    }
    std::vector<LpTerm> rest = {{out.vars.x[a], 1.0}};
    for (int j = 0; j < m; ++j) rest.push_back({w[j][a], -1.0});
    lp.add_row(rest, RowType::kGreaterEqual, 0.0, "rlo_" + std::to_string(a));
    std::vector<LpTerm> rest_up = rest;
    for (int j = 0; j < m; ++j) rest_up.push_back({out.vars.y[j], u});
    lp.add_row(rest_up, RowType::kLessEqual, u, "rup_" + std::to_string(a));
  }
  return out;
}

namespace {

void add_y_rows(LpModel& lp, const BilinearMip& mip, const VarLayout& v) {
  int idx = 0;
  for (const YRow& r : mip.y_rows) {
    std::vector<LpTerm> terms;
    for (const auto& [j, c] : r.coef) terms.push_back({v.y[j - 1], to_double(c)});
    lp.add_row(terms, r.type, to_double(r.rhs), "yrow" + std::to_string(idx++));
  }
}

void check_mip(const BilinearMip& mip) {
  std::vector<Triple> t = mip.triples;
  std::map<std::pair<ArcId, int>, int> seen;
  check_triples(mip.net, mip.num_y, t, &seen);
  if (static_cast<int>(mip.cost_x.size()) != mip.net.num_arcs() ||
      static_cast<int>(mip.cost_y.size()) != mip.num_y ||
      mip.cost_z.size() != mip.triples.size()) {
    throw std::invalid_argument("objective dimensions do not match the model");
  }
}

}  // namespace

void set_objective(SetModel& model, const BilinearMip& mip) {
  for (std::size_t a = 0; a < mip.cost_x.size(); ++a) model.lp.set_objective(model.vars.x[a], mip.cost_x[a]);
  for (std::size_t j = 0; j < mip.cost_y.size(); ++j) model.lp.set_objective(model.vars.y[j], mip.cost_y[j]);
  for (std::size_t k = 0; k < mip.cost_z.size(); ++k) model.lp.set_objective(model.vars.z[k], mip.cost_z[k]);
  model.lp.set_objective_offset(mip.offset);
  model.lp.set_sense(ObjSense::kMinimize);
}

SetModel mccormick(const BilinearMip& mip) {
  check_mip(mip);
  SetModel out;
  std::vector<Triple> triples = mip.triples;
  std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) { return a.k < b.k; });
  out.vars = add_xyz(out.lp, mip.net, mip.num_y, triples);
  add_xi_rows(out.lp, mip.net, out.vars.x);
  add_y_rows(out.lp, mip, out.vars);
  add_mccormick_rows(out.lp, mip.net, out.vars, triples);
  set_objective(out, mip);
  return out;
}

namespace {

// A constraint sum c_i x_i + sum d_l y_l - rhs (>= | =) 0 in the original space.
struct GeRow {
  std::map<int, double> x;  // by arc position
  std::map<int, double> y;  // by j
  double rhs = 0.0;
  bool equality = false;
  std::string name;
};

}  // namespace

SetModel rlt1(const BilinearMip& mip) {
  SetModel out = mccormick(mip);
  LpModel& lp = out.lp;
  const Network& net = mip.net;
  const int n = net.num_arcs();

  // Structural rows in >= 0 form.
  std::vector<GeRow> rows;
  std::vector<NodeId> nodes = net.nodes();
  std::sort(nodes.begin(), nodes.end());
  for (NodeId v : nodes) {
    GeRow r;
    double s = net.sense(v) == RowSense::kMinusOnly ? -1.0 : 1.0;
    for (ArcId a : net.out_arcs(v)) r.x[net.arc_index(a)] += s;
    for (ArcId a : net.in_arcs(v)) r.x[net.arc_index(a)] -= s;
    r.rhs = s * to_double(net.supply(v));
    r.equality = net.sense(v) == RowSense::kBoth;
    r.name = "bal" + std::to_string(v);
    rows.push_back(r);
  }
  int yi = 0;
  for (const YRow& yr : mip.y_rows) {
    GeRow r;
    double s = yr.type == RowType::kLessEqual ? -1.0 : 1.0;
    for (const auto& [j, c] : yr.coef) r.y[j] += s * to_double(c);
    r.rhs = s * to_double(yr.rhs);
    r.equality = yr.type == RowType::kEqual;
    r.name = "yrow" + std::to_string(yi++);
    rows.push_back(r);
  }

  std::map<std::pair<int, int>, int> xy;  // (arc position, j) -> column
  for (const Triple& t : mip.triples) xy[{net.arc_index(t.arc), t.j}] = out.vars.z[t.k - 1];
  auto x_times_y = [&](int a, int j) {
    auto it = xy.find({a, j});
    if (it != xy.end()) return it->second;
    const double u = to_double(net.capacity(net.arcs()[a].id));
    int col = lp.add_variable(0.0, u, 0.0, "p" + std::to_string(a) + "_" + std::to_string(j));
    xy[{a, j}] = col;
    return col;
  };
  std::map<std::pair<int, int>, int> yy;
  auto y_times_y = [&](int l, int j) {
    if (l == j) return out.vars.y[j - 1];
    auto key = std::minmax(l, j);
    auto it = yy.find(key);
    if (it != yy.end()) return it->second;
    int col = lp.add_variable(0.0, 1.0, 0.0, "q" + std::to_string(key.first) + "_" + std::to_string(key.second));
    yy[key] = col;
    return col;
  };

  for (int j = 1; j <= mip.num_y; ++j) {
    const int yj = out.vars.y[j - 1];
    for (const GeRow& r : rows) {
      RowType type = r.equality ? RowType::kEqual : RowType::kGreaterEqual;
      // g * y_j >= 0
      std::vector<LpTerm> prod;
      for (auto [a, c] : r.x) prod.push_back({x_times_y(a, j), c});
      for (auto [l, d] : r.y) prod.push_back({y_times_y(l, j), d});
      prod.push_back({yj, -r.rhs});
      lp.add_row(prod, type, 0.0, r.name + "_y" + std::to_string(j));
      // g * (1 - y_j) >= 0
      std::vector<LpTerm> comp;
      for (auto [a, c] : r.x) comp.push_back({out.vars.x[a], c});
      for (auto [l, d] : r.y) comp.push_back({out.vars.y[l - 1], d});
      for (const LpTerm& t : prod) comp.push_back({t.var, -t.coef});
      lp.add_row(comp, type, r.rhs, r.name + "_cy" + std::to_string(j));
    }
    // Bound factors x_a >= 0 and u_a - x_a >= 0 times y_j and (1 - y_j).
    for (int a = 0; a < n; ++a) {
      const int p = x_times_y(a, j);
      const int x = out.vars.x[a];
      const double u = to_double(net.capacity(net.arcs()[a].id));
      const std::string tag = std::to_string(a) + "_" + std::to_string(j);
      lp.add_row({{p, 1.0}}, RowType::kGreaterEqual, 0.0, "bf0_" + tag);
      lp.add_row({{x, 1.0}, {p, -1.0}}, RowType::kGreaterEqual, 0.0, "bf1_" + tag);
      lp.add_row({{yj, u}, {p, -1.0}}, RowType::kGreaterEqual, 0.0, "bf2_" + tag);
      lp.add_row({{x, -1.0}, {yj, -u}, {p, 1.0}}, RowType::kGreaterEqual, -u, "bf3_" + tag);
    }
    // y_l >= 0 and 1 - y_l >= 0 times y_j and (1 - y_j).
    for (int l = 1; l <= mip.num_y; ++l) {
      if (l == j) continue;
      const int q = y_times_y(l, j);
      const int yl = out.vars.y[l - 1];
      const std::string tag = std::to_string(l) + "_" + std::to_string(j);
      lp.add_row({{q, 1.0}}, RowType::kGreaterEqual, 0.0, "yf0_" + tag);
      lp.add_row({{yl, 1.0}, {q, -1.0}}, RowType::kGreaterEqual, 0.0, "yf1_" + tag);
      lp.add_row({{yj, 1.0}, {q, -1.0}}, RowType::kGreaterEqual, 0.0, "yf2_" + tag);
      lp.add_row({{yl, -1.0}, {yj, -1.0}, {q, 1.0}}, RowType::kGreaterEqual, -1.0, "yf3_" + tag);
    }
  }
  return out;
}

}  // namespace netcut
