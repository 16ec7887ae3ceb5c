#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "netcut/instances.h"
#include "netcut/model.h"
#include "netcut/verify.h"

using namespace netcut;
using namespace netcut::testing;

namespace {

SetObjective random_objective(std::mt19937_64& rng, const BilinearSet& s) {
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  SetObjective o;
  for (const Arc& a : s.net().arcs()) o.x[a.id] = c(rng);
  for (int j = 0; j < s.m(); ++j) o.y.push_back(c(rng));
  for (const Triple& t : s.triples()) o.z[t.k] = c(rng);
  return o;
}

double minimize_over(SetModel model, const BilinearSet& s, const SetObjective& o) {
  model.lp.clear_objective();
  for (const auto& [a, v] : o.x) model.lp.set_objective(model.vars.x[s.net().arc_index(a)], v);
  for (std::size_t j = 0; j < o.y.size(); ++j) model.lp.set_objective(model.vars.y[j], o.y[j]);
  for (const auto& [k, v] : o.z) model.lp.set_objective(model.vars.z[k - 1], v);
  LpSolution sol = solve(model.lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  return sol.objective;
}

}  // namespace

TEST_CASE("bilinear set bookkeeping") {
  BilinearSet s = full_set(spiked_cycle(), 2);
  CHECK(s.num_triples() == 16);
  CHECK(s.triple(3).arc == 21);
  CHECK(s.triple(3).j == 1);
  CHECK(s.triple_for(21, 2) == 4);
  CHECK_FALSE(s.triple_for(21, 3).has_value());
  CHECK_THROWS(BilinearSet(spiked_cycle(), 1, {{1, 15, 2}}));
  CHECK_THROWS(BilinearSet(spiked_cycle(), 1, {{1, 99, 1}}));
  CHECK_THROWS(BilinearSet(spiked_cycle(), 1, {{1, 15, 1}, {2, 15, 1}}));
}

TEST_CASE("McCormick and extended formulation bracket the hull") {
  std::mt19937_64 rng(21);
  for (int inst = 0; inst < 8; ++inst) {
    Network net = random_network(rng, 4 + inst % 3, 2);
    BilinearSet s = full_set(net, 1 + inst % 2);
    SetModel mc = mccormick(s);
    CHECK(mc.lp.num_variables() == net.num_arcs() + s.m() + s.num_triples());
    SetModel ext = extended_formulation(s);
    for (int trial = 0; trial < 5; ++trial) {
      SetObjective o = random_objective(rng, s);
      HullResult h = hull_minimum(s, o);
      REQUIRE(h.status == LpStatus::kOptimal);
      double lo = minimize_over(mc, s, o);
      double ex = minimize_over(ext, s, o);
      CHECK(lo <= h.value + 1e-6);
      CHECK(ex == doctest::Approx(h.value).epsilon(1e-7));
    }
  }
}

TEST_CASE("point extraction follows the layout") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  SetModel mc = mccormick(s);
  std::vector<double> values(mc.lp.num_variables(), 0.0);
  values[mc.vars.x[s.net().arc_index(62)]] = 3.0;
  values[mc.vars.y[0]] = 0.25;
  values[mc.vars.z[s.triple_for(62, 1).value() - 1]] = 0.75;
  Point p = point_from_values(s, mc.vars, values);
  CHECK(p.x.at(62) == 3.0);
  CHECK(p.y == std::vector<double>{0.25});
  CHECK(p.z.at(*s.triple_for(62, 1)) == 0.75);
}

TEST_CASE("relaxations of a benchmark problem are ordered") {
  Instance inst = gen_fc(3, 6, 0.5);
  SetModel mc = mccormick(inst.mip);
  SetModel rl = rlt1(inst.mip);
  LpSolution a = solve(mc.lp);
  LpSolution b = solve(rl.lp);
  REQUIRE(a.status == LpStatus::kOptimal);
  REQUIRE(b.status == LpStatus::kOptimal);
  MipResult opt = mip_optimum(inst.mip);
  REQUIRE(opt.status == LpStatus::kOptimal);
  CHECK(a.objective <= b.objective + 1e-6);
  CHECK(b.objective <= opt.value + 1e-6);
  CHECK(rl.lp.num_rows() > mc.lp.num_rows());

  // The McCormick model written and read back solves to the same value.
  std::stringstream ss;
  mc.lp.write(ss);
  LpSolution c = solve(LpModel::read(ss));
  CHECK(c.objective == doctest::Approx(a.objective).epsilon(1e-9));
}
