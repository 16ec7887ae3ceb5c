#ifndef NETCUT_NETWORK_H_
#define NETCUT_NETWORK_H_

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "netcut/rational.h"

namespace netcut {

using NodeId = int;
using ArcId = int;

class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class Sign { kPlus, kMinus };

inline Sign negate(Sign s) { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }
inline char sign_char(Sign s) { return s == Sign::kPlus ? '+' : '-'; }
inline int sign_value(Sign s) { return s == Sign::kPlus ? 1 : -1; }

// Which flow-balance rows a node contributes to Xi. kBoth is the paired
// convention; one-sided nodes carry only the printed direction.
enum class RowSense { kBoth, kPlusOnly, kMinusOnly };

struct Arc {
  ArcId id;
  NodeId tail;
  NodeId head;
};

// sign + : sum_out x - sum_in x >= f ; sign - : the negated row >= -f.
struct FlowBalanceRef {
  NodeId node;
  Sign sign;
  auto operator<=>(const FlowBalanceRef&) const = default;
};

std::string to_string(const FlowBalanceRef& r);

struct SparseRow {
  std::map<ArcId, Rational> coef;
  Rational rhs;
};

class Network {
 public:
  void add_node(NodeId id, const Rational& supply, RowSense sense = RowSense::kBoth);
  void add_arc(ArcId id, NodeId tail, NodeId head, const Rational& capacity);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  bool has_node(NodeId v) const { return node_pos_.count(v) > 0; }
  bool has_arc(ArcId a) const { return arc_pos_.count(a) > 0; }
  int node_index(NodeId v) const;
  int arc_index(ArcId a) const;

  const Arc& arc(ArcId a) const { return arcs_[arc_index(a)]; }
  const Rational& supply(NodeId v) const { return supply_[node_index(v)]; }
  const Rational& capacity(ArcId a) const { return capacity_[arc_index(a)]; }
  RowSense sense(NodeId v) const { return sense_[node_index(v)]; }
  bool has_row(const FlowBalanceRef& r) const;

  void set_supply(NodeId v, const Rational& f) { supply_[node_index(v)] = f; }
  void set_capacity(ArcId a, const Rational& u);

  const std::vector<ArcId>& out_arcs(NodeId v) const { return out_[node_index(v)]; }
  const std::vector<ArcId>& in_arcs(NodeId v) const { return in_[node_index(v)]; }
  // Undirected neighbours, ascending and without repeats.
  std::vector<NodeId> neighbors(NodeId v) const;
  // Arcs joining u and v in either direction.
  std::vector<ArcId> arcs_between(NodeId u, NodeId v) const;

  // Every flow-balance row present in Xi, ordered by node then sign.
  std::vector<FlowBalanceRef> rows() const;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Arc> arcs_;
  std::vector<Rational> supply_;
  std::vector<RowSense> sense_;
  std::vector<Rational> capacity_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::unordered_map<NodeId, int> node_pos_;
  std::unordered_map<ArcId, int> arc_pos_;
};

SparseRow flow_balance_row(const Network& net, const FlowBalanceRef& ref);

int incident_endpoint_count(const Network& net, const std::set<NodeId>& node_set,
                            ArcId arc);

}  // namespace netcut

#endif  // NETCUT_NETWORK_H_
