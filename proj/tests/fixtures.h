#ifndef NETCUT_TESTS_FIXTURES_H_
#define NETCUT_TESTS_FIXTURES_H_

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "netcut/ecr.h"
#include "netcut/model.h"
#include "netcut/network.h"
#include "netcut/structures.h"

namespace netcut::testing {

inline FlowBalanceRef plus(NodeId v) { return {v, Sign::kPlus}; }
inline FlowBalanceRef minus(NodeId v) { return {v, Sign::kMinus}; }

// One triple per (arc, j), arc-major in arc declaration order.
inline BilinearSet full_set(const Network& net, int m) {
  std::vector<Triple> triples;
  int k = 0;
  for (const Arc& a : net.arcs()) {
    for (int j = 1; j <= m; ++j) triples.push_back({++k, a.id, j});
  }
  return BilinearSet(net, m, triples);
}

inline int class_of(const BilinearSet& s, ArcId arc, int j) { return *s.triple_for(arc, j); }

inline Rational R(long p, long q = 1) { return Rational(p, q); }

// Connected random network with a feasible integral flow; supplies are read
// off that flow so Xi is never empty.
inline Network random_network(std::mt19937_64& rng, int n_nodes, int extra_arcs,
                              RowSense sense = RowSense::kBoth) {
  std::uniform_int_distribution<int> cap(1, 9);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (NodeId v = 2; v <= n_nodes; ++v) {
    NodeId w = std::uniform_int_distribution<int>(1, v - 1)(rng);
    auto e = std::bernoulli_distribution(0.5)(rng) ? std::pair{v, w} : std::pair{w, v};
    arcs.push_back(e);
    seen.insert(e);
  }
  std::uniform_int_distribution<int> pick(1, n_nodes);
  for (int tries = 0; tries < 50 * extra_arcs && extra_arcs > 0; ++tries) {
    NodeId a = pick(rng), b = pick(rng);
    if (a == b || seen.count({a, b}) || seen.count({b, a})) continue;
    arcs.push_back({a, b});
    seen.insert({a, b});
    if (--extra_arcs == 0) break;
  }
  std::vector<int> caps, flow;
  std::vector<long> f(n_nodes + 1, 0);
  for (const auto& [t, h] : arcs) {
    int u = cap(rng);
    int x = std::uniform_int_distribution<int>(0, u)(rng);
    caps.push_back(u);
    f[t] += x;
    f[h] -= x;
  }
  Network net;
  for (NodeId v = 1; v <= n_nodes; ++v) net.add_node(v, Rational(f[v]), sense);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    net.add_arc(static_cast<ArcId>(i + 1), arcs[i].first, arcs[i].second, caps[i]);
  }
  return net;
}

// Random point of the McCormick box, not necessarily feasible for Xi.
inline Point random_point(std::mt19937_64& rng, const BilinearSet& s) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point p;
  for (const Arc& a : s.net().arcs()) p.x[a.id] = unit(rng) * to_double(s.net().capacity(a.id));
  double left = 1.0;
  for (int j = 0; j < s.m(); ++j) {
    double y = unit(rng) * left;
    p.y.push_back(y);
    left -= y;
  }
  for (const Triple& t : s.triples()) p.z[t.k] = unit(rng) * p.x[t.arc];
  return p;
}

}  // namespace netcut::testing

#endif  // NETCUT_TESTS_FIXTURES_H_
