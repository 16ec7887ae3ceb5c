#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "netcut/structures.h"

using namespace netcut;
using namespace netcut::testing;

namespace {

TreeStructure tree(const BilinearSet& s, int k, std::set<NodeId> p1, std::set<NodeId> p2) {
  TreeStructure ts;
  ts.class_k = k;
  ts.part1 = p1;
  ts.part2 = p2;
  ts.nodes.assign(p1.begin(), p1.end());
  ts.nodes.insert(ts.nodes.end(), p2.begin(), p2.end());
  std::sort(ts.nodes.begin(), ts.nodes.end());
  (void)s;
  return ts;
}

ForestStructure example4_forest(const BilinearSet& s) {
  ForestStructure fs;
  fs.class_k = class_of(s, 15, 1);
  fs.forest_nodes = {{1, 2, 6, 8}, {1, 4}};
  fs.connection_nodes = {3};
  fs.connection_arcs = {84};
  return fs;
}

bool connected(const Network& net, const std::vector<NodeId>& nodes) {
  std::set<NodeId> in(nodes.begin(), nodes.end()), seen{nodes.front()};
  std::vector<NodeId> stack{nodes.front()};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : net.neighbors(v)) {
      if (in.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == in.size();
}

}  // namespace

TEST_CASE("spiked cycle layout") {
  Network net = spiked_cycle();
  CHECK(net.num_nodes() == 8);
  CHECK(net.num_arcs() == 8);
  CHECK(net.neighbors(1) == std::vector<NodeId>{2, 4, 5});
  CHECK(net.neighbors(3) == std::vector<NodeId>{2, 4, 7});
  CHECK(net.neighbors(5) == std::vector<NodeId>{1});
}

TEST_CASE("tree of the first worked example maps to its assignment") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  const int k = class_of(s, 15, 1);
  TreeStructure ts = tree(s, k, {8, 2}, {4, 1, 6});
  CHECK(tree_case(s, ts, Sign::kPlus) == TreeCase::kTailPlus);
  EcrAssignment a = tree_to_assignment(s, ts, Sign::kPlus, TreeCase::kTailPlus);
  CHECK(a.I == std::vector<std::set<FlowBalanceRef>>{{minus(8), minus(2)}});
  CHECK(a.Ibar == std::set<FlowBalanceRef>{plus(4), plus(1), plus(6)});
  CHECK(a.J.empty());
  CHECK(a.Jbar.empty());
  CHECK_THROWS_AS(tree_to_assignment(s, ts, Sign::kPlus, TreeCase::kHeadPlus), CaseMismatch);
  CHECK_NOTHROW(aggregate(s, a));
}

TEST_CASE("four tree cases") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  const int k = class_of(s, 21, 1);  // arc (2,1)
  TreeStructure at_head = tree(s, k, {1}, {4});
  TreeStructure at_tail = tree(s, k, {2}, {3});
  CHECK(tree_case(s, at_head, Sign::kPlus) == TreeCase::kHeadPlus);
  CHECK(tree_case(s, at_head, Sign::kMinus) == TreeCase::kHeadMinus);
  CHECK(tree_case(s, at_tail, Sign::kPlus) == TreeCase::kTailPlus);
  CHECK(tree_case(s, at_tail, Sign::kMinus) == TreeCase::kTailMinus);
  // Case (i): part 1 takes + rows.
  EcrAssignment a = tree_to_assignment(s, at_head, Sign::kPlus);
  CHECK(a.I[0] == std::set<FlowBalanceRef>{plus(1)});
  CHECK(a.Ibar == std::set<FlowBalanceRef>{minus(4)});
  EcrAssignment b = tree_to_assignment(s, at_tail, Sign::kMinus);
  CHECK(b.I[0] == std::set<FlowBalanceRef>{plus(2)});

  TreeStructure both = tree(s, k, {1, 2}, {});
  CHECK_THROWS_AS(tree_case(s, both, Sign::kPlus), CaseMismatch);
}

TEST_CASE("tree enumeration on the spiked cycle") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  const int k = class_of(s, 15, 1);
  TreeOptions o;
  o.max_nodes = 2;
  std::vector<TreeStructure> trees = enumerate_trees(s, k, o);
  // {1}, {5}, {1,2}, {1,4} with all their partitions.
  CHECK(trees.size() == 2 + 2 + 4 + 4);
  std::set<std::vector<NodeId>> sets;
  for (const TreeStructure& ts : trees) sets.insert(ts.nodes);
  CHECK(sets == std::set<std::vector<NodeId>>{{1}, {5}, {1, 2}, {1, 4}});
  // Deterministic.
  std::vector<TreeStructure> again = enumerate_trees(s, k, o);
  REQUIRE(again.size() == trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    CHECK(again[i].nodes == trees[i].nodes);
    CHECK(again[i].part1 == trees[i].part1);
  }
}

TEST_CASE("enumerated trees and labelled forests aggregate on random networks") {
  std::mt19937_64 rng(11);
  for (int inst = 0; inst < 6; ++inst) {
    Network net = random_network(rng, 4 + inst, 2);
    BilinearSet s1 = full_set(net, 1);
    BilinearSet s2 = full_set(net, 2);
    for (const Triple& t : s1.triples()) {
      TreeOptions o;
      o.max_nodes = 3;
      for (const TreeStructure& ts : enumerate_trees(s1, t.k, o)) {
        CHECK(static_cast<int>(ts.nodes.size()) <= 3);
        CHECK(connected(net, ts.nodes));
        CHECK(incident_endpoint_count(net, {ts.nodes.begin(), ts.nodes.end()}, t.arc) == 1);
        for (Sign sg : {Sign::kPlus, Sign::kMinus}) CHECK_NOTHROW(aggregate(s1, tree_to_assignment(s1, ts, sg)));
      }
    }
    for (const Triple& t : s2.triples()) {
      ForestOptions o;
      o.budget = 2;
      for (const ForestStructure& fs : enumerate_forests(s2, t.k, o)) {
        CHECK(validate_forest(s2, fs).ok());
        CHECK(fs.member_count() <= 3);
        for (Sign sg : {Sign::kPlus, Sign::kMinus}) CHECK_NOTHROW(aggregate(s2, label_forest(s2, fs, sg)));
      }
    }
  }
}

TEST_CASE("forest structure of the labelling example") {
  BilinearSet s = full_set(spiked_cycle(), 2);
  ForestStructure fs = example4_forest(s);
  CHECK(validate_forest(s, fs).ok());
  // First-in first-out propagation from the class arc reaches node 8 through
  // the connection arc before its own tree, which fixes 8+ and (8,4) in J.
  EcrAssignment a = label_forest(s, fs, Sign::kPlus);
  CHECK(a.I[0] == std::set<FlowBalanceRef>{minus(1), minus(2), minus(6), plus(8)});
  CHECK(a.I[1] == std::set<FlowBalanceRef>{minus(1), minus(4)});
  CHECK(a.Ibar == std::set<FlowBalanceRef>{plus(3)});
  CHECK(a.J == std::set<ArcId>{84});
  CHECK(a.Jbar.empty());
  AggregatedInequality agg = aggregate(s, a);
  CHECK(agg.bilinear.size() == 7);
  CHECK(relax_all(agg, s).size() == 128);
}

TEST_CASE("forest structure without any valid aggregation") {
  BilinearSet s = full_set(spiked_cycle(), 2);
  ForestStructure fs;
  fs.class_k = class_of(s, 15, 1);
  fs.forest_nodes = {{1, 2}, {2, 6}};
  fs.connection_nodes = {6};
  // The structure meets the forest conditions but not the pairwise ones:
  // connection node 6 touches forest node 2 of the second copy.
  CHECK(validate_forest(s, fs).failed == ForestCondition::kIsolation);
  int rejected = 0;
  for (int mask = 0; mask < 32; ++mask) {
    auto sg = [&](int b) { return (mask >> b) & 1 ? Sign::kPlus : Sign::kMinus; };
    EcrAssignment a;
    a.class_k = fs.class_k;
    a.sign = Sign::kPlus;
    a.I = {{{1, sg(0)}, {2, sg(1)}}, {{2, sg(2)}, {6, sg(3)}}};
    a.Ibar = {{6, sg(4)}};
    try {
      aggregate(s, a);
    } catch (const ConditionViolated&) {
      ++rejected;
    }
  }
  CHECK(rejected == 32);
  CHECK_THROWS_AS(label_forest(s, fs, Sign::kPlus), LabelConflict);
}

TEST_CASE("label conflicts and malformed forests") {
  BilinearSet s = full_set(spiked_cycle(), 2);
  ForestStructure fs;
  fs.class_k = class_of(s, 15, 1);
  fs.forest_nodes = {{1}, {}};
  fs.connection_nodes = {1};
  CHECK_THROWS_AS(label_forest(s, fs, Sign::kPlus), LabelConflict);

  ForestStructure unreached;
  unreached.class_k = class_of(s, 15, 1);
  unreached.forest_nodes = {{1}, {7}};
  CHECK_FALSE(validate_forest(s, unreached).ok());
  CHECK_THROWS_AS(label_forest(s, unreached, Sign::kPlus), LabelConflict);

  ForestStructure wrong_m;
  wrong_m.class_k = class_of(s, 15, 1);
  wrong_m.forest_nodes = {{1}};
  CHECK_FALSE(validate_forest(s, wrong_m).ok());
}

TEST_CASE("forest enumeration respects the budget and priority order") {
  BilinearSet s = full_set(spiked_cycle(), 2);
  const int k = class_of(s, 15, 1);
  ForestOptions o;
  o.budget = 1;
  std::vector<ForestStructure> plain = enumerate_forests(s, k, o);
  REQUIRE_FALSE(plain.empty());
  for (const ForestStructure& fs : plain) CHECK(fs.member_count() <= 2);
  o.priority_arcs = {23};
  std::vector<ForestStructure> prio = enumerate_forests(s, k, o);
  CHECK(prio.size() == plain.size());
  o.max_structures = 3;
  CHECK(enumerate_forests(s, k, o).size() == 3);
}
