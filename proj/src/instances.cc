#include "netcut/instances.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "netcut/lp.h"

namespace netcut {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool flow_feasible(const Network& net) {
  LpModel lp;
  std::vector<int> x;
  for (const Arc& a : net.arcs()) x.push_back(lp.add_variable(0.0, to_double(net.capacity(a.id))));
  add_xi_rows(lp, net, x);
  return solve(lp).status == LpStatus::kOptimal;
}

int round_share(double share, int total) {
  return std::max(1, static_cast<int>(std::lround(share * total)));
}

// Complete bipartite network with one-sided supply and demand rows.
// Demands are redrawn until total supply covers them and a flow exists.
Network bipartite(std::mt19937_64& rng, int n_supply, int n_demand, int lo, int hi, int cap_lo,
                  int cap_hi, std::vector<NodeId>* supply_nodes, std::vector<NodeId>* demand_nodes,
                  int* attempts) {
  std::vector<int> s(n_supply);
  for (int& v : s) v = uniform_int(rng, lo, hi);
  std::vector<int> cap(n_supply * n_demand);
  for (int& v : cap) v = uniform_int(rng, cap_lo, cap_hi);
  supply_nodes->clear();
  demand_nodes->clear();
  for (int i = 0; i < n_supply; ++i) supply_nodes->push_back(i + 1);
  for (int j = 0; j < n_demand; ++j) demand_nodes->push_back(n_supply + j + 1);

  for (*attempts = 1; *attempts <= 100; ++*attempts) {
    std::vector<int> d(n_demand);
    for (int& v : d) v = uniform_int(rng, lo, hi);
    if (std::accumulate(d.begin(), d.end(), 0) > std::accumulate(s.begin(), s.end(), 0)) continue;
    Network net;
    for (int i = 0; i < n_supply; ++i) net.add_node((*supply_nodes)[i], s[i], RowSense::kMinusOnly);
    for (int j = 0; j < n_demand; ++j) net.add_node((*demand_nodes)[j], -d[j], RowSense::kMinusOnly);
    int id = 1;
    for (int i = 0; i < n_supply; ++i) {
      for (int j = 0; j < n_demand; ++j) {
        net.add_arc(id, (*supply_nodes)[i], (*demand_nodes)[j], cap[id - 1]);
        ++id;
      }
    }
    if (flow_feasible(net)) return net;
  }
  throw InfeasibleGeneration("no feasible demand vector after 100 attempts");
}

}  // namespace

Instance gen_fc(std::uint64_t seed, int n_nodes, double frac) {
  if (n_nodes < 2 || frac <= 0.0 || frac > 1.0) throw std::invalid_argument("bad fc parameters");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.family = "fc";
  inst.seed = seed;
  inst.params = {{"nodes", n_nodes}, {"frac", frac}};
  const int ns = n_nodes / 2;
  const int nd = n_nodes - ns;
  Network net = bipartite(rng, ns, nd, 20, 50, 1, 50, &inst.supply_nodes, &inst.demand_nodes,
                          &inst.resample_attempts);

  const int n_arcs = net.num_arcs();
  const int n_y = round_share(0.2, n_arcs);
  std::vector<ArcId> ids;
  for (const Arc& a : net.arcs()) ids.push_back(a.id);
  std::shuffle(ids.begin(), ids.end(), rng);
  inst.fc_arcs.assign(ids.begin(), ids.begin() + n_y);
  std::sort(inst.fc_arcs.begin(), inst.fc_arcs.end());

  BilinearMip& mip = inst.mip;
  mip.num_y = n_y;
  mip.cost_x.assign(n_arcs, 0.0);
  for (int a = 0; a < n_arcs; ++a) mip.cost_x[a] = uniform_real(rng, 10.0, 20.0);
  for (int j = 1; j <= n_y; ++j) {
    const ArcId arc = inst.fc_arcs[j - 1];
    const double u = to_double(net.capacity(arc));
    const double eps = frac * u;
    const double t = uniform_int(rng, 50, 100);
    const double c = uniform_real(rng, 1.0, 5.0);
    inst.fc_eps.push_back(eps);
    inst.fc_slope.push_back(t);
    inst.fc_charge.push_back(c);
    mip.cost_x[net.arc_index(arc)] = c + t / eps;
    mip.cost_y.push_back(t);
    mip.cost_z.push_back(-t / eps);
    mip.triples.push_back({j, arc, j});
  }
  const int budget = round_share(0.2, n_y);
  inst.params["budget"] = budget;
  YRow row;
  for (int j = 1; j <= n_y; ++j) row.coef.push_back({j, 1});
  row.type = RowType::kLessEqual;
  row.rhs = budget;
  mip.y_rows.push_back(row);
  mip.net = std::move(net);
  return inst;
}

Instance gen_tr(std::uint64_t seed, int n_nodes, int services) {
  if (n_nodes < 2 || services < 2) throw std::invalid_argument("bad tr parameters");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.family = "tr";
  inst.seed = seed;
  inst.params = {{"nodes", n_nodes}, {"services", services}};
  const int ns = n_nodes / 2;
  const int nd = n_nodes - ns;
  // Supplies and demands shrink with the side size so small graphs stay feasible.
  const double scale = std::min(1.0, ns / 25.0);
  const int lo = static_cast<int>(std::lround(100 * scale));
  const int hi = static_cast<int>(std::lround(200 * scale));
  inst.params["supply_lo"] = lo;
  inst.params["supply_hi"] = hi;
  Network net = bipartite(rng, ns, nd, lo, hi, 1, 25, &inst.supply_nodes, &inst.demand_nodes,
                          &inst.resample_attempts);

  const int n_arcs = net.num_arcs();
  BilinearMip& mip = inst.mip;
  mip.num_y = services;
  mip.cost_x.resize(n_arcs);
  for (double& c : mip.cost_x) c = uniform_real(rng, 20.0, 40.0) * services;
  mip.cost_y.assign(services, 0.0);
  int k = 1;
  for (int j = 1; j <= services; ++j) {
    for (const Arc& a : net.arcs()) {
      mip.triples.push_back({k++, a.id, j});
      mip.cost_z.push_back(uniform_real(rng, -10.0, 10.0));
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= services; ++a) {
    for (int b = a + 1; b <= services; ++b) pairs.push_back({a, b});
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(round_share(0.1, static_cast<int>(pairs.size())));
  std::sort(pairs.begin(), pairs.end());
  inst.conflicts = pairs;
  for (const auto& [a, b] : pairs) {
    YRow row;
    row.coef = {{a, 1}, {b, 1}};
    row.type = RowType::kLessEqual;
    row.rhs = 1;
    mip.y_rows.push_back(row);
  }
  mip.net = std::move(net);
  return inst;
}

std::vector<RelaxationSet> single_relaxations(const BilinearMip& mip) {
  std::vector<RelaxationSet> out;
  for (int j = 1; j <= mip.num_y; ++j) {
    std::vector<Triple> triples;
    std::vector<int> z_map;
    for (std::size_t idx = 0; idx < mip.triples.size(); ++idx) {
      const Triple& t = mip.triples[idx];
      if (t.j != j) continue;
      triples.push_back({static_cast<int>(triples.size()) + 1, t.arc, 1});
      z_map.push_back(t.k - 1);
    }
    out.push_back({BilinearSet(mip.net, 1, triples), {j - 1}, z_map});
  }
  return out;
}

std::vector<RelaxationSet> fc_relaxations(const Instance& inst) {
  return single_relaxations(inst.mip);
}

const char* to_string(TrMode m) {
  switch (m) {
    case TrMode::kSingle: return "single";
    case TrMode::kConflictPair: return "conflict_pair";
    case TrMode::kPairsPlusFree: return "pairs_plus_free";
    case TrMode::kPairsPlusAll: return "pairs_plus_all";
  }
  return "single";
}

TrMode tr_mode_from_string(const std::string& s) {
  for (TrMode m : {TrMode::kSingle, TrMode::kConflictPair, TrMode::kPairsPlusFree, TrMode::kPairsPlusAll}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown relaxation mode " + s);
}

std::vector<RelaxationSet> tr_relaxations(const Instance& inst, TrMode mode) {
  if (mode == TrMode::kSingle) return single_relaxations(inst.mip);
  std::vector<RelaxationSet> out;
  const BilinearMip& mip = inst.mip;
  for (const auto& [a, b] : inst.conflicts) {
    std::vector<Triple> triples;
    std::vector<int> z_map;
    for (std::size_t idx = 0; idx < mip.triples.size(); ++idx) {
      const Triple& t = mip.triples[idx];
      if (t.j != a && t.j != b) continue;
      triples.push_back({static_cast<int>(triples.size()) + 1, t.arc, t.j == a ? 1 : 2});
      z_map.push_back(t.k - 1);
    }
    out.push_back({BilinearSet(mip.net, 2, triples), {a - 1, b - 1}, z_map});
  }
  if (mode == TrMode::kConflictPair) return out;
  std::set<int> conflicted;
  for (const auto& [a, b] : inst.conflicts) conflicted.insert({a, b});
  for (RelaxationSet& rs : single_relaxations(mip)) {
    if (mode == TrMode::kPairsPlusAll || !conflicted.count(rs.y_map[0] + 1)) out.push_back(std::move(rs));
  }
  return out;
}

}  // namespace netcut
