#ifndef NETCUT_INSTANCES_H_
#define NETCUT_INSTANCES_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netcut/model.h"

namespace netcut {

class InfeasibleGeneration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A generated benchmark problem plus the data it was built from.
struct Instance {
  std::string family;  // "fc" or "tr"
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::vector<NodeId> supply_nodes;
  std::vector<NodeId> demand_nodes;
  BilinearMip mip;
  // fc: per y variable (j-1), its arc and data; tr: conflicting service pairs.
  std::vector<ArcId> fc_arcs;
  std::vector<double> fc_eps, fc_slope, fc_charge;
  std::vector<std::pair<int, int>> conflicts;
  int resample_attempts = 0;
};

// Bipartite fixed-charge flow problem; n_nodes is split evenly into supply and demand nodes.
Instance gen_fc(std::uint64_t seed, int n_nodes, double frac);

// Transportation problem with service conflicts on a balanced bipartite graph.
Instance gen_tr(std::uint64_t seed, int n_nodes, int services);

// A set S together with the instance columns its y and z variables refer to.
struct RelaxationSet {
  BilinearSet set;
  std::vector<int> y_map;  // set j-1 -> instance y index (0-based)
  std::vector<int> z_map;  // set k-1 -> instance triple index (0-based)
};

std::vector<RelaxationSet> fc_relaxations(const Instance& inst);

// kPairsPlusFree adds single sets for y variables outside every conflict;
// kPairsPlusAll adds them for every y.
enum class TrMode { kSingle, kConflictPair, kPairsPlusFree, kPairsPlusAll };

const char* to_string(TrMode m);
TrMode tr_mode_from_string(const std::string& s);

std::vector<RelaxationSet> tr_relaxations(const Instance& inst, TrMode mode);

// One m = 1 set per y variable of any instance.
std::vector<RelaxationSet> single_relaxations(const BilinearMip& mip);

}  // namespace netcut

#endif  // NETCUT_INSTANCES_H_
