#include "netcut/structures.h"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <tuple>

namespace netcut {

const char* to_string(TreeCase c) {
  switch (c) {
    case TreeCase::kHeadPlus:
      return "i";
    case TreeCase::kHeadMinus:
      return "ii";
    case TreeCase::kTailPlus:
      return "iii";
    case TreeCase::kTailMinus:
      return "iv";
  }
  return "?";
}

const char* to_string(ForestCondition c) {
  switch (c) {
    case ForestCondition::kOk:
      return "ok";
    case ForestCondition::kMalformed:
      return "malformed";
    case ForestCondition::kTreeDecomposition:
      return "tree-decomposition";
    case ForestCondition::kVerticalConnection:
      return "vertical-connection";
    case ForestCondition::kSpanningTree:
      return "spanning-tree";
    case ForestCondition::kAnchor:
      return "anchor";
    case ForestCondition::kConnectionArc:
      return "connection-arc";
    case ForestCondition::kIsolation:
      return "isolation";
    case ForestCondition::kPairwise:
      return "pairwise";
  }
  return "?";
}

namespace {

bool connected(const Network& net, const std::set<NodeId>& nodes) {
  if (nodes.empty()) return true;
  std::set<NodeId> seen{*nodes.begin()};
  std::deque<NodeId> queue{*nodes.begin()};
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : net.neighbors(v)) {
      if (nodes.count(w) && seen.insert(w).second) queue.push_back(w);
    }
  }
  return seen.size() == nodes.size();
}

std::vector<std::set<NodeId>> components(const Network& net, const std::set<NodeId>& nodes) {
  std::vector<std::set<NodeId>> out;
  std::set<NodeId> left = nodes;
  while (!left.empty()) {
    std::set<NodeId> comp{*left.begin()};
    std::deque<NodeId> queue{*left.begin()};
    left.erase(left.begin());
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (NodeId w : net.neighbors(v)) {
        if (left.erase(w)) {
          comp.insert(w);
          queue.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

int count_induced_arcs(const Network& net, const std::set<NodeId>& nodes) {
  int n = 0;
  for (const Arc& a : net.arcs()) n += nodes.count(a.tail) && nodes.count(a.head);
  return n;
}

}  // namespace

TreeCase tree_case(const BilinearSet& s, const TreeStructure& ts, Sign sign) {
  const Arc& l = s.net().arc(s.triple(ts.class_k).arc);
  const bool has_t = std::binary_search(ts.nodes.begin(), ts.nodes.end(), l.tail);
  const bool has_h = std::binary_search(ts.nodes.begin(), ts.nodes.end(), l.head);
  if (has_t == has_h) throw CaseMismatch("the class arc must have exactly one endpoint in the tree");
  if (has_h) return sign == Sign::kPlus ? TreeCase::kHeadPlus : TreeCase::kHeadMinus;
  return sign == Sign::kPlus ? TreeCase::kTailPlus : TreeCase::kTailMinus;
}

EcrAssignment tree_to_assignment(const BilinearSet& s, const TreeStructure& ts, Sign sign,
                                 std::optional<TreeCase> expected) {
  if (s.m() != 1) throw std::invalid_argument("tree assignments need m = 1");
  const TreeCase c = tree_case(s, ts, sign);
  if (expected && *expected != c) {
    throw CaseMismatch(std::string("tree matches case ") + to_string(c) + ", not " + to_string(*expected));
  }
  const Sign first = (c == TreeCase::kHeadPlus || c == TreeCase::kTailMinus) ? Sign::kPlus : Sign::kMinus;
  EcrAssignment a;
  a.class_k = ts.class_k;
  a.sign = sign;
  a.I.resize(1);
  for (NodeId v : ts.part1) a.I[0].insert({v, first});
  for (NodeId v : ts.part2) a.Ibar.insert({v, negate(first)});
  return a;
}

bool rows_available(const Network& net, const EcrAssignment& a) {
  for (const auto& rows : a.I) {
    for (const FlowBalanceRef& r : rows) {
      if (!net.has_row(r)) return false;
    }
  }
  for (const FlowBalanceRef& r : a.Ibar) {
    if (!net.has_row(r)) return false;
  }
  return true;
}

std::vector<TreeStructure> enumerate_trees(const BilinearSet& s, int class_k,
                                           const TreeOptions& opts) {
  const Network& net = s.net();
  const Arc& l = net.arc(s.triple(class_k).arc);
  std::vector<TreeStructure> out;
  if (opts.max_nodes < 1) return out;

  std::set<std::vector<NodeId>> all;
  for (NodeId root : {l.tail, l.head}) {
    const NodeId banned = root == l.tail ? l.head : l.tail;
    std::set<std::vector<NodeId>> level{{root}};
    for (int size = 1; size <= opts.max_nodes && !level.empty(); ++size) {
      all.insert(level.begin(), level.end());
      if (size == opts.max_nodes) break;
      std::set<std::vector<NodeId>> next;
      for (const auto& nodes : level) {
        for (NodeId v : nodes) {
          for (NodeId w : net.neighbors(v)) {
            if (w == banned || std::binary_search(nodes.begin(), nodes.end(), w)) continue;
            std::vector<NodeId> grown = nodes;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
            next.insert(std::move(grown));
          }
        }
      }
      level = std::move(next);
    }
  }
  std::vector<std::vector<NodeId>> sets(all.begin(), all.end());
  std::stable_sort(sets.begin(), sets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  std::mt19937_64 rng(opts.seed);
  for (const auto& nodes : sets) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::uint64_t> masks;
    if (n <= opts.partition_cap_log2) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) masks.push_back(mask);
    } else {
      std::set<std::uint64_t> picked;
      const std::size_t want = std::size_t{1} << opts.partition_cap_log2;
      std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << n) - 1);
      while (picked.size() < want) picked.insert(dist(rng));
      masks.assign(picked.begin(), picked.end());
    }
    const std::set<NodeId> node_set(nodes.begin(), nodes.end());
    const int induced = count_induced_arcs(net, node_set);
    for (std::uint64_t mask : masks) {
      TreeStructure ts;
      ts.class_k = class_k;
      ts.nodes = nodes;
      ts.induced_arcs = induced;
      for (int b = 0; b < n; ++b) ((mask >> b) & 1 ? ts.part1 : ts.part2).insert(nodes[b]);
      if (opts.feasible_for && s.m() == 1 &&
          !rows_available(net, tree_to_assignment(s, ts, *opts.feasible_for))) {
        continue;
      }
      out.push_back(std::move(ts));
    }
  }
  return out;
}

int ForestStructure::member_count() const {
  int n = static_cast<int>(connection_nodes.size() + connection_arcs.size());
  for (const auto& f : forest_nodes) n += static_cast<int>(f.size());
  return n;
}

namespace {

bool near_or_in(const Network& net, NodeId c, const std::set<NodeId>& nodes) {
  if (nodes.count(c)) return true;
  for (NodeId w : net.neighbors(c)) {
    if (nodes.count(w)) return true;
  }
  return false;
}

bool touches(const Arc& a, const std::set<NodeId>& nodes) {
  return nodes.count(a.tail) || nodes.count(a.head);
}

std::set<NodeId> unite(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  std::set<NodeId> u = a;
  u.insert(b.begin(), b.end());
  return u;
}

// Conditions that stay violated once violated as members are added.
ForestCheck hereditary_checks(const BilinearSet& s, const ForestStructure& fs) {
  const Network& net = s.net();
  const Triple& base = s.triple(fs.class_k);
  const int jp = base.j;
  const Arc& ip = net.arc(base.arc);
  const int m = s.m();
  const std::set<NodeId>& conn = fs.connection_nodes;

  {
    const bool in_j = fs.connection_arcs.count(ip.id) > 0;
    const int cnt = incident_endpoint_count(net, unite(conn, fs.forest_nodes[jp - 1]), ip.id);
    if (cnt > 1 || (in_j && cnt != 0)) {
      return {ForestCondition::kAnchor, "class arc touched more than once"};
    }
  }
  for (ArcId a : fs.connection_arcs) {
    for (int j = 1; j <= m; ++j) {
      if (incident_endpoint_count(net, unite(conn, fs.forest_nodes[j - 1]), a) > 1) {
        return {ForestCondition::kConnectionArc,
                "connection arc " + std::to_string(a) + " touches two nodes of copy " + std::to_string(j)};
      }
    }
  }
  for (int j = 1; j <= m; ++j) {
    const std::set<NodeId> both_sets = unite(conn, fs.forest_nodes[j - 1]);
    for (NodeId v : fs.forest_nodes[j - 1]) {
      if (!conn.count(v)) continue;
      for (NodeId w : net.neighbors(v)) {
        if (both_sets.count(w)) {
          return {ForestCondition::kIsolation,
                  "shared node " + std::to_string(v) + " adjacent to " + std::to_string(w)};
        }
      }
      for (ArcId a : fs.connection_arcs) {
        const Arc& arc = net.arc(a);
        if (arc.tail == v || arc.head == v) {
          return {ForestCondition::kIsolation,
                  "shared node " + std::to_string(v) + " touches a connection arc"};
        }
      }
      if (j == jp && (ip.tail == v || ip.head == v)) {
        return {ForestCondition::kIsolation,
                "shared node " + std::to_string(v) + " touches the class arc"};
      }
    }
  }
  for (const Arc& a : net.arcs()) {
    for (int j = 1; j <= m; ++j) {
      int producers = (a.id == ip.id && j == jp) ? 1 : 0;
      producers += incident_endpoint_count(net, fs.forest_nodes[j - 1], a.id);
      producers += incident_endpoint_count(net, conn, a.id);
      producers += fs.connection_arcs.count(a.id) ? 1 : 0;
      if (producers > 2) {
        return {ForestCondition::kPairwise, "term y" + std::to_string(j) + "*x" + std::to_string(a.id) +
                                                " appears in " + std::to_string(producers) + " constraints"};
      }
    }
  }
  return {};
}

}  // namespace

ForestCheck validate_forest(const BilinearSet& s, const ForestStructure& fs) {
  const Network& net = s.net();
  const int m = s.m();
  if (fs.class_k < 1 || fs.class_k > s.num_triples()) {
    return {ForestCondition::kMalformed, "unknown class"};
  }
  if (static_cast<int>(fs.forest_nodes.size()) != m) {
    return {ForestCondition::kMalformed, "one forest node set per y variable required"};
  }
  if (!fs.trees.empty() && static_cast<int>(fs.trees.size()) != m) {
    return {ForestCondition::kMalformed, "one tree list per y variable required"};
  }
  for (const auto& f : fs.forest_nodes) {
    for (NodeId v : f) {
      if (!net.has_node(v)) return {ForestCondition::kMalformed, "unknown node " + std::to_string(v)};
    }
  }
  for (NodeId v : fs.connection_nodes) {
    if (!net.has_node(v)) return {ForestCondition::kMalformed, "unknown node " + std::to_string(v)};
  }
  for (ArcId a : fs.connection_arcs) {
    if (!net.has_arc(a)) return {ForestCondition::kMalformed, "unknown arc " + std::to_string(a)};
  }
  if (fs.member_count() == 0) return {};

  std::set<NodeId> forest_union;
  for (const auto& f : fs.forest_nodes) forest_union.insert(f.begin(), f.end());

  if (!forest_union.empty()) {
    // Trees per copy.
    std::vector<std::set<NodeId>> trees;
    for (int j = 0; j < m; ++j) {
      if (fs.trees.empty()) {
        for (auto& c : components(net, fs.forest_nodes[j])) trees.push_back(std::move(c));
        continue;
      }
      std::set<NodeId> covered;
      for (const auto& t : fs.trees[j]) {
        if (t.empty() || !connected(net, t)) {
          return {ForestCondition::kTreeDecomposition, "tree in copy " + std::to_string(j + 1) + " is not connected"};
        }
        for (NodeId v : t) {
          if (!covered.insert(v).second) {
            return {ForestCondition::kTreeDecomposition, "node " + std::to_string(v) + " in two trees"};
          }
        }
        trees.push_back(t);
      }
      if (covered != fs.forest_nodes[j]) {
        return {ForestCondition::kTreeDecomposition, "trees do not cover copy " + std::to_string(j + 1)};
      }
    }

    // Vertical connectivity, grown greedily from the first tree.
    const auto conn_parts = components(net, fs.connection_nodes);
    std::vector<bool> placed(trees.size(), false);
    std::set<NodeId> placed_nodes = trees[0];
    placed[0] = true;
    for (std::size_t round = 1; round < trees.size(); ++round) {
      bool grew = false;
      for (std::size_t t = 0; t < trees.size() && !grew; ++t) {
        if (placed[t]) continue;
        bool link = false;
        for (ArcId a : fs.connection_arcs) {
          const Arc& arc = net.arc(a);
          if (touches(arc, trees[t]) && touches(arc, placed_nodes)) link = true;
        }
        for (const auto& part : conn_parts) {
          if (link) break;
          bool to_new = false, to_old = false;
          for (NodeId c : part) {
            to_new = to_new || near_or_in(net, c, trees[t]);
            to_old = to_old || near_or_in(net, c, placed_nodes);
          }
          link = to_new && to_old;
        }
        if (link) {
          placed[t] = true;
          placed_nodes.insert(trees[t].begin(), trees[t].end());
          grew = true;
        }
      }
      if (!grew) return {ForestCondition::kVerticalConnection, "trees are not vertically connected"};
    }

    const std::set<NodeId> all_nodes = unite(forest_union, fs.connection_nodes);
    if (!connected(net, all_nodes)) {
      return {ForestCondition::kSpanningTree, "forest and connection nodes are not connected"};
    }
    for (ArcId a : fs.connection_arcs) {
      if (!touches(net.arc(a), all_nodes)) {
        return {ForestCondition::kSpanningTree, "connection arc " + std::to_string(a) + " touches no node"};
      }
    }
  }

  ForestCheck h = hereditary_checks(s, fs);
  if (!h.ok()) return h;
  const Triple& base = s.triple(fs.class_k);
  const bool in_j = fs.connection_arcs.count(base.arc) > 0;
  const int cnt = incident_endpoint_count(net, unite(fs.connection_nodes, fs.forest_nodes[base.j - 1]), base.arc);
  if (in_j == (cnt == 1)) {
    return {ForestCondition::kAnchor, "class arc must be a connection arc or touch exactly one node"};
  }
  return {};
}

namespace {

enum class Kind { kForest, kConn, kArc };

struct Member {
  Kind kind;
  int j;  // copy for forest nodes, 0 otherwise
  int id;
  auto operator<=>(const Member&) const = default;
};

std::string describe(const Member& mb) {
  switch (mb.kind) {
    case Kind::kForest:
      return "node " + std::to_string(mb.id) + " of copy " + std::to_string(mb.j);
    case Kind::kConn:
      return "connection node " + std::to_string(mb.id);
    case Kind::kArc:
      return "connection arc " + std::to_string(mb.id);
  }
  return "?";
}

}  // namespace

EcrAssignment label_forest(const BilinearSet& s, const ForestStructure& fs, Sign sign) {
  const Network& net = s.net();
  const int m = s.m();
  if (static_cast<int>(fs.forest_nodes.size()) != m) {
    throw std::invalid_argument("one forest node set per y variable required");
  }
  const Triple& base = s.triple(fs.class_k);
  const Arc& ip = net.arc(base.arc);
  const int jp = base.j;
  auto in_forest = [&](int j, NodeId v) { return fs.forest_nodes[j - 1].count(v) > 0; };
  auto in_conn = [&](NodeId v) { return fs.connection_nodes.count(v) > 0; };

  std::map<Member, Sign> label;
  std::deque<Member> queue;
  auto assign = [&](const Member& mb, Sign value) {
    auto it = label.find(mb);
    if (it == label.end()) {
      label.emplace(mb, value);
      queue.push_back(mb);
    } else if (it->second != value) {
      throw LabelConflict(describe(mb) + " needs both labels");
    }
  };

  // Seed at the class arc.
  if (fs.connection_arcs.count(ip.id)) assign({Kind::kArc, 0, ip.id}, sign);
  if (in_forest(jp, ip.head)) assign({Kind::kForest, jp, ip.head}, sign);
  if (in_conn(ip.tail)) assign({Kind::kConn, 0, ip.tail}, sign);
  if (in_forest(jp, ip.tail)) assign({Kind::kForest, jp, ip.tail}, negate(sign));
  if (in_conn(ip.head)) assign({Kind::kConn, 0, ip.head}, negate(sign));

  auto incident_arcs = [&](NodeId v) {
    std::vector<ArcId> arcs;
    for (ArcId a : fs.connection_arcs) {
      const Arc& arc = net.arc(a);
      if (arc.tail == v || arc.head == v) arcs.push_back(a);
    }
    return arcs;
  };

  while (!queue.empty()) {
    const Member i = queue.front();
    queue.pop_front();
    const Sign li = label.at(i);
    if (i.kind == Kind::kForest) {
      for (NodeId w : net.neighbors(i.id)) {
        if (in_forest(i.j, w)) assign({Kind::kForest, i.j, w}, li);
        if (in_conn(w)) assign({Kind::kConn, 0, w}, negate(li));
      }
      for (ArcId a : incident_arcs(i.id)) {
        assign({Kind::kArc, 0, a}, net.arc(a).tail == i.id ? li : negate(li));
      }
    }
    if (i.kind == Kind::kConn) {
      for (int j = 1; j <= m; ++j) {
        if (in_forest(j, i.id)) assign({Kind::kForest, j, i.id}, li);
      }
      for (NodeId w : net.neighbors(i.id)) {
        for (int j = 1; j <= m; ++j) {
          if (in_forest(j, w)) assign({Kind::kForest, j, w}, negate(li));
        }
        if (in_conn(w)) assign({Kind::kConn, 0, w}, li);
      }
      for (ArcId a : incident_arcs(i.id)) {
        assign({Kind::kArc, 0, a}, net.arc(a).tail == i.id ? negate(li) : li);
      }
    }
    if (i.kind == Kind::kArc) {
      const Arc& arc = net.arc(i.id);
      for (int j = 1; j <= m; ++j) {
        if (in_forest(j, arc.tail)) assign({Kind::kForest, j, arc.tail}, li);
        if (in_forest(j, arc.head)) assign({Kind::kForest, j, arc.head}, negate(li));
      }
      if (in_conn(arc.tail)) assign({Kind::kConn, 0, arc.tail}, negate(li));
      if (in_conn(arc.head)) assign({Kind::kConn, 0, arc.head}, li);
    }
  }

  EcrAssignment a;
  a.class_k = fs.class_k;
  a.sign = sign;
  a.I.resize(m);
  auto get = [&](const Member& mb) {
    auto it = label.find(mb);
    if (it == label.end()) throw LabelConflict(describe(mb) + " is never reached from the class arc");
    return it->second;
  };
  for (int j = 1; j <= m; ++j) {
    for (NodeId v : fs.forest_nodes[j - 1]) a.I[j - 1].insert({v, get({Kind::kForest, j, v})});
  }
  for (NodeId v : fs.connection_nodes) a.Ibar.insert({v, get({Kind::kConn, 0, v})});
  for (ArcId x : fs.connection_arcs) (get({Kind::kArc, 0, x}) == Sign::kPlus ? a.J : a.Jbar).insert(x);
  return a;
}

namespace {

ForestStructure to_structure(const BilinearSet& s, int class_k, const std::vector<Member>& members) {
  ForestStructure fs;
  fs.class_k = class_k;
  fs.forest_nodes.resize(s.m());
  for (const Member& mb : members) {
    switch (mb.kind) {
      case Kind::kForest:
        fs.forest_nodes[mb.j - 1].insert(mb.id);
        break;
      case Kind::kConn:
        fs.connection_nodes.insert(mb.id);
        break;
      case Kind::kArc:
        fs.connection_arcs.insert(mb.id);
        break;
    }
  }
  return fs;
}

}  // namespace

std::vector<ForestStructure> enumerate_forests(const BilinearSet& s, int class_k,
                                               const ForestOptions& opts) {
  const Network& net = s.net();
  const int m = s.m();
  const Triple& base = s.triple(class_k);
  const Arc& ip = net.arc(base.arc);
  std::set<ArcId> priority(opts.priority_arcs.begin(), opts.priority_arcs.end());

  // Members sharing a bilinear term with `mb`.
  auto neighbours = [&](const Member& mb, std::vector<Member>& out) {
    auto add_node_side = [&](NodeId w, int only_j) {
      for (int j = 1; j <= m; ++j) {
        if (only_j == 0 || only_j == j) out.push_back({Kind::kForest, j, w});
      }
      out.push_back({Kind::kConn, 0, w});
    };
    if (mb.kind == Kind::kArc) {
      const Arc& a = net.arc(mb.id);
      add_node_side(a.tail, 0);
      add_node_side(a.head, 0);
      return;
    }
    const int only_j = mb.kind == Kind::kForest ? mb.j : 0;
    if (mb.kind == Kind::kForest) {
      out.push_back({Kind::kConn, 0, mb.id});
    } else {
      for (int j = 1; j <= m; ++j) out.push_back({Kind::kForest, j, mb.id});
    }
    for (const std::vector<ArcId>* arcs : {&net.out_arcs(mb.id), &net.in_arcs(mb.id)}) {
      for (ArcId a : *arcs) {
        const Arc& arc = net.arc(a);
        add_node_side(arc.tail == mb.id ? arc.head : arc.tail, only_j);
        out.push_back({Kind::kArc, 0, a});
      }
    }
  };

  auto score = [&](const std::vector<Member>& members) {
    int sc = 0;
    for (const Member& mb : members) {
      if (mb.kind == Kind::kArc) {
        sc += priority.count(mb.id) ? 1 : 0;
        continue;
      }
      for (const std::vector<ArcId>* arcs : {&net.out_arcs(mb.id), &net.in_arcs(mb.id)}) {
        for (ArcId a : *arcs) sc += priority.count(a) ? 1 : 0;
      }
    }
    return sc;
  };

  std::set<std::vector<Member>> level;
  for (const Member& seed : {Member{Kind::kArc, 0, ip.id}, Member{Kind::kForest, base.j, ip.tail},
                             Member{Kind::kForest, base.j, ip.head}, Member{Kind::kConn, 0, ip.tail},
                             Member{Kind::kConn, 0, ip.head}}) {
    level.insert({seed});
  }

  std::vector<ForestStructure> out;
  for (int depth = 0; depth <= opts.budget && !level.empty(); ++depth) {
    std::vector<std::vector<Member>> ordered(level.begin(), level.end());
    if (!priority.empty()) {
      std::stable_sort(ordered.begin(), ordered.end(),
                       [&](const auto& a, const auto& b) { return score(a) > score(b); });
    }
    std::set<std::vector<Member>> next;
    for (const auto& members : ordered) {
      ForestStructure fs = to_structure(s, class_k, members);
      if (validate_forest(s, fs).ok()) {
        out.push_back(std::move(fs));
        if (out.size() >= opts.max_structures) return out;
      }
      if (depth == opts.budget) continue;
      std::vector<Member> cand;
      for (const Member& mb : members) neighbours(mb, cand);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (const Member& c : cand) {
        if (std::binary_search(members.begin(), members.end(), c)) continue;
        std::vector<Member> grown = members;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), c), c);
        if (next.count(grown)) continue;
        if (!hereditary_checks(s, to_structure(s, class_k, grown)).ok()) continue;
        next.insert(std::move(grown));
      }
    }
    level = std::move(next);
  }
  return out;
}

Network spiked_cycle(RowSense sense) {
  Network net;
  for (NodeId v = 1; v <= 8; ++v) net.add_node(v, 0, sense);
  const std::pair<NodeId, NodeId> arcs[] = {{1, 5}, {2, 1}, {4, 1}, {2, 3}, {4, 3}, {6, 2}, {3, 7}, {8, 4}};
  for (const auto& [t, h] : arcs) net.add_arc(10 * t + h, t, h, 10);
  return net;
}

}  // namespace netcut
