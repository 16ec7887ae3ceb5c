#ifndef NETCUT_STRUCTURES_H_
#define NETCUT_STRUCTURES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "netcut/ecr.h"
#include "netcut/model.h"
#include "netcut/network.h"

namespace netcut {

// Cases (i)-(iv) of the tree-to-assignment mapping.
enum class TreeCase { kHeadPlus, kHeadMinus, kTailPlus, kTailMinus };

const char* to_string(TreeCase c);

struct TreeStructure {
  int class_k = 0;
  std::vector<NodeId> nodes;   // sorted
  std::set<NodeId> part1;      // the remaining nodes form part 2
  std::set<NodeId> part2;
  int induced_arcs = 0;        // arcs with both endpoints in `nodes`
};

class CaseMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TreeOptions {
  int max_nodes = 3;
  int partition_cap_log2 = 10;  // all partitions up to 2^10, sampled beyond
  std::uint64_t seed = 1;
  // Keep only partitions whose rows exist in Xi for the requested sign.
  std::optional<Sign> feasible_for;
};

// Connected node sets of size <= max_nodes holding exactly one endpoint of the
// class arc, each with its partitions, in a deterministic order.
std::vector<TreeStructure> enumerate_trees(const BilinearSet& s, int class_k,
                                           const TreeOptions& opts);

// Which of (i)-(iv) applies to the tree for the given class sign.
TreeCase tree_case(const BilinearSet& s, const TreeStructure& ts, Sign sign);

// Requires m = 1. Throws CaseMismatch when `expected` disagrees with the
// endpoint of the class arc held by the tree.
EcrAssignment tree_to_assignment(const BilinearSet& s, const TreeStructure& ts, Sign sign,
                                 std::optional<TreeCase> expected = std::nullopt);

// True when every row the assignment would use exists in Xi.
bool rows_available(const Network& net, const EcrAssignment& a);

struct ForestStructure {
  int class_k = 0;
  std::vector<std::set<NodeId>> forest_nodes;  // per j = 1..m
  // Optional explicit trees per j; derived from components when empty.
  std::vector<std::vector<std::set<NodeId>>> trees;
  std::set<NodeId> connection_nodes;
  std::set<ArcId> connection_arcs;

  int member_count() const;
  bool operator==(const ForestStructure& o) const = default;
};

enum class ForestCondition {
  kOk,
  kMalformed,
  kTreeDecomposition,  // forest nodes split into trees of G^j
  kVerticalConnection, // trees vertically connected through connection nodes/arcs
  kSpanningTree,       // all nodes connected, every connection arc touched
  kAnchor,             // class arc in J~ xor incident to one node
  kConnectionArc,      // connection arcs touch at most one node per copy
  kIsolation,          // shared connection/forest nodes are isolated
  kPairwise,           // some bilinear term produced by three or more constraints
};

const char* to_string(ForestCondition c);

struct ForestCheck {
  ForestCondition failed = ForestCondition::kOk;
  std::string detail;
  bool ok() const { return failed == ForestCondition::kOk; }
};

ForestCheck validate_forest(const BilinearSet& s, const ForestStructure& fs);

class LabelConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Label propagation from the class arc; members are processed first-in first-out
// and neighbours in ascending id order.
EcrAssignment label_forest(const BilinearSet& s, const ForestStructure& fs, Sign sign);

struct ForestOptions {
  int budget = 2;                 // members beyond the seed
  std::vector<ArcId> priority_arcs;
  std::size_t max_structures = 5000;
};

std::vector<ForestStructure> enumerate_forests(const BilinearSet& s, int class_k,
                                               const ForestOptions& opts);

// The eight-node spiked cycle used throughout the worked examples.
Network spiked_cycle(RowSense sense = RowSense::kBoth);

}  // namespace netcut

#endif  // NETCUT_STRUCTURES_H_
