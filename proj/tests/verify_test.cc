#include "doctest.h"
#include "fixtures.h"
#include "netcut/verify.h"

using namespace netcut;
using namespace netcut::testing;

namespace {

// 1 -> 2 -> 3 with a bypass 1 -> 3; two units leave node 1.
Network small_net() {
  Network net;
  net.add_node(1, 2);
  net.add_node(2, 0);
  net.add_node(3, -2);
  net.add_arc(1, 1, 2, 2);
  net.add_arc(2, 2, 3, 2);
  net.add_arc(3, 1, 3, 1);
  return net;
}

}  // namespace

TEST_CASE("hull minimum by hand") {
  BilinearSet s = full_set(small_net(), 1);
  // min y - z_(arc 1): y = 0 gives 0, y = 1 gives 1 - x1 with x1 in [1, 2].
  SetObjective o;
  o.y = {1.0};
  o.z[*s.triple_for(1, 1)] = -1.0;
  HullResult h = hull_minimum(s, o);
  REQUIRE(h.status == LpStatus::kOptimal);
  CHECK(h.value == doctest::Approx(-1.0));
  REQUIRE(h.point);
  CHECK(h.point->y[0] == 1.0);
  CHECK(h.point->x.at(1) == doctest::Approx(2.0));

  o.y = {3.0};
  CHECK(hull_minimum(s, o).value == doctest::Approx(0.0));
}

TEST_CASE("McCormick rows are valid, a broken cut is caught") {
  BilinearSet s = full_set(small_net(), 1);
  const int k = *s.triple_for(3, 1);
  LinearCut upper;  // x - z >= 0
  upper.q[3] = 1;
  upper.s[k] = -1;
  upper.r = {0};
  ValidityResult ok = validity_check(upper, s);
  CHECK(ok.valid);
  CHECK(ok.min_slack >= -1e-9);
  CHECK(validity_check_extended(upper, s).valid);

  LinearCut broken;  // z - x >= 0 fails at y = 0 with flow on the bypass
  broken.q[3] = -1;
  broken.s[k] = 1;
  broken.r = {0};
  ValidityResult bad = validity_check(broken, s);
  CHECK_FALSE(bad.valid);
  CHECK(bad.min_slack == doctest::Approx(-1.0));
  CHECK(bad.worst_disjunct == 0);
  REQUIRE(bad.certificate);
  CHECK(broken.violation(*bad.certificate) == doctest::Approx(1.0));
  ValidityResult bad_ext = validity_check_extended(broken, s);
  CHECK_FALSE(bad_ext.valid);
  CHECK(bad_ext.min_slack == doctest::Approx(bad.min_slack));
}

TEST_CASE("both validity oracles agree on worked-example cuts") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  // Give the cycle a feasible flow: 3 units along 6 -> 2 -> 1 -> 5.
  Network net = spiked_cycle();
  net.set_supply(6, 3);
  net.set_supply(5, -3);
  s = full_set(net, 1);
  EcrAssignment a;
  a.class_k = class_of(s, 15, 1);
  a.I = {{minus(8), minus(2)}};
  a.Ibar = {plus(4), plus(1), plus(6)};
  for (const LinearCut& c : relax_all(aggregate(s, a), s)) {
    ValidityResult v1 = validity_check(c, s);
    ValidityResult v2 = validity_check_extended(c, s);
    CHECK(v1.valid);
    CHECK(v2.valid);
    CHECK(v1.min_slack == doctest::Approx(v2.min_slack).epsilon(1e-7));
    TightnessReport t = tightness_report(c, s, 5);
    CHECK(t.valid);
    CHECK(t.points >= 1);
  }
}

TEST_CASE("brute-force optimum") {
  BilinearMip mip;
  mip.net.add_node(1, 4, RowSense::kMinusOnly);
  mip.net.add_node(2, -4, RowSense::kMinusOnly);
  mip.net.add_arc(1, 1, 2, 4);
  mip.net.add_arc(2, 1, 2, 4);
  mip.num_y = 1;
  mip.triples = {{1, 1, 1}};
  mip.cost_x = {3.5, 3.0};
  mip.cost_y = {1.0};
  mip.cost_z = {-2.5};
  MipResult r = mip_optimum(mip);
  REQUIRE(r.status == LpStatus::kOptimal);
  // y = 1 routes everything on arc 1 at unit cost 1: 4 + 1.
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(r.y == std::vector<int>{1});
  CHECK(r.patterns == 2);

  mip.y_rows.push_back({{{1, Rational(1)}}, RowType::kLessEqual, Rational(0)});
  r = mip_optimum(mip);
  CHECK(r.value == doctest::Approx(12.0));
  CHECK(r.patterns == 1);
  CHECK_THROWS_AS(mip_optimum(mip, 0), TooLarge);
}

TEST_CASE("lifted hull identity on the two-row example") {
  Network net;
  net.add_node(1, 3);
  net.add_node(2, 0);
  net.add_node(3, -3);
  net.add_arc(1, 1, 2, 2);
  net.add_arc(2, 1, 3, 2);
  net.add_arc(3, 2, 3, 3);
  LiftedRows rows = {{{1, Rational(2)}, {2, Rational(-5)}}};
  LiftedCheck c = lifted_hull_check(net, rows, 20, 3);
  CHECK(c.pass);
  CHECK(c.objectives == 20);
  CHECK(c.max_rel_error <= 1e-6);
}
