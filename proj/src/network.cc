#include "netcut/network.h"

#include <algorithm>

namespace netcut {

std::string to_string(const FlowBalanceRef& r) {
  return std::to_string(r.node) + sign_char(r.sign);
}

void Network::add_node(NodeId id, const Rational& supply, RowSense sense) {
  if (has_node(id)) throw std::invalid_argument("duplicate node " + std::to_string(id));
  node_pos_[id] = num_nodes();
  nodes_.push_back(id);
  supply_.push_back(supply);
  sense_.push_back(sense);
  out_.emplace_back();
  in_.emplace_back();
}

void Network::add_arc(ArcId id, NodeId tail, NodeId head, const Rational& capacity) {
  if (has_arc(id)) throw std::invalid_argument("duplicate arc " + std::to_string(id));
  if (tail == head) throw std::invalid_argument("self-loop on arc " + std::to_string(id));
  if (!has_node(tail) || !has_node(head)) {
    throw std::invalid_argument("arc " + std::to_string(id) + " has undeclared endpoint");
  }
  if (capacity < 0) throw std::invalid_argument("negative capacity on arc " + std::to_string(id));
  arc_pos_[id] = num_arcs();
  arcs_.push_back({id, tail, head});
  capacity_.push_back(capacity);
  out_[node_index(tail)].push_back(id);
  in_[node_index(head)].push_back(id);
}

int Network::node_index(NodeId v) const {
  auto it = node_pos_.find(v);
  if (it == node_pos_.end()) throw NotFound("unknown node " + std::to_string(v));
  return it->second;
}

int Network::arc_index(ArcId a) const {
  auto it = arc_pos_.find(a);
  if (it == arc_pos_.end()) throw NotFound("unknown arc " + std::to_string(a));
  return it->second;
}

void Network::set_capacity(ArcId a, const Rational& u) {
  if (u < 0) throw std::invalid_argument("negative capacity");
  capacity_[arc_index(a)] = u;
}

bool Network::has_row(const FlowBalanceRef& r) const {
  switch (sense(r.node)) {
    case RowSense::kBoth:
      return true;
    case RowSense::kPlusOnly:
      return r.sign == Sign::kPlus;
    case RowSense::kMinusOnly:
      return r.sign == Sign::kMinus;
  }
  return false;
}

std::vector<NodeId> Network::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  for (ArcId a : out_arcs(v)) out.push_back(arc(a).head);
  for (ArcId a : in_arcs(v)) out.push_back(arc(a).tail);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ArcId> Network::arcs_between(NodeId u, NodeId v) const {
  std::vector<ArcId> out;
  for (ArcId a : out_arcs(u)) {
    if (arc(a).head == v) out.push_back(a);
  }
  for (ArcId a : in_arcs(u)) {
    if (arc(a).tail == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlowBalanceRef> Network::rows() const {
  std::vector<NodeId> sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<FlowBalanceRef> out;
  for (NodeId v : sorted) {
    for (Sign s : {Sign::kPlus, Sign::kMinus}) {
      if (has_row({v, s})) out.push_back({v, s});
    }
  }
  return out;
}

SparseRow flow_balance_row(const Network& net, const FlowBalanceRef& ref) {
  const int sg = sign_value(ref.sign);
  SparseRow row;
  for (ArcId a : net.out_arcs(ref.node)) row.coef[a] += sg;
  for (ArcId a : net.in_arcs(ref.node)) row.coef[a] -= sg;
  for (auto it = row.coef.begin(); it != row.coef.end();) {
    it = it->second == 0 ? row.coef.erase(it) : std::next(it);
  }
  row.rhs = sg * net.supply(ref.node);
  return row;
}

int incident_endpoint_count(const Network& net, const std::set<NodeId>& node_set,
                            ArcId arc) {
  const Arc& a = net.arc(arc);
  return static_cast<int>(node_set.count(a.tail)) + static_cast<int>(node_set.count(a.head));
}

}  // namespace netcut
