#include "netcut/json_io.h"

#include <fstream>

namespace netcut {

namespace {

Rational rational_of(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return rational_from_double(j.get<double>());
  } catch (const std::exception& e) {
    throw JsonSchemaError(std::string("bad rational: ") + e.what());
  }
  throw JsonSchemaError("expected a rational, got " + j.dump());
}

// Integers stay JSON numbers; other rationals are written as "p/q".
Json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonSchemaError(std::string("missing key: ") + key);
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad value for ") + key + ": " + e.what());
  }
}

const char* sense_name(RowSense s) {
  switch (s) {
    case RowSense::kBoth: return "both";
    case RowSense::kPlusOnly: return "plus";
    case RowSense::kMinusOnly: return "minus";
  }
  return "both";
}

RowSense sense_of(const std::string& s) {
  if (s == "both") return RowSense::kBoth;
  if (s == "plus") return RowSense::kPlusOnly;
  if (s == "minus") return RowSense::kMinusOnly;
  throw JsonSchemaError("unknown row sense " + s);
}

const char* row_type_name(RowType t) {
  switch (t) {
    case RowType::kLessEqual: return "<=";
    case RowType::kGreaterEqual: return ">=";
    case RowType::kEqual: return "=";
  }
  return "=";
}

RowType row_type_of(const std::string& s) {
  if (s == "<=") return RowType::kLessEqual;
  if (s == ">=") return RowType::kGreaterEqual;
  if (s == "=") return RowType::kEqual;
  throw JsonSchemaError("unknown row type " + s);
}

Json refs_json(const std::set<FlowBalanceRef>& refs) {
  Json out = Json::array();
  for (const FlowBalanceRef& r : refs) out.push_back(to_string(r));
  return out;
}

std::set<FlowBalanceRef> refs_of(const Json& j) {
  std::set<FlowBalanceRef> out;
  for (const Json& e : j) {
    const std::string s = e.get<std::string>();
    if (s.size() < 2 || (s.back() != '+' && s.back() != '-')) throw JsonSchemaError("bad row " + s);
    out.insert({std::stoi(s.substr(0, s.size() - 1)), s.back() == '+' ? Sign::kPlus : Sign::kMinus});
  }
  return out;
}

RelaxOption option_of(const std::string& s) {
  for (RelaxOption o : {RelaxOption::kLowerBound, RelaxOption::kUpperBound, RelaxOption::kBilinear}) {
    if (s == to_string(o)) return o;
  }
  throw JsonSchemaError("unknown relaxation option " + s);
}

Json node_sets(const std::vector<std::set<NodeId>>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

}  // namespace

Json to_json(const Network& net) {
  Json nodes = Json::array();
  for (NodeId v : net.nodes()) {
    Json n = {{"id", v}, {"supply", rational_json(net.supply(v))}};
    if (net.sense(v) != RowSense::kBoth) n["sense"] = sense_name(net.sense(v));
    nodes.push_back(n);
  }
  Json arcs = Json::array();
  for (const Arc& a : net.arcs()) {
    arcs.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head},
                    {"capacity", rational_json(net.capacity(a.id))}});
  }
  return {{"nodes", nodes}, {"arcs", arcs}};
}

Network network_from_json(const Json& j) {
  Network net;
  for (const Json& n : field(j, "nodes")) {
    RowSense sense = n.contains("sense") ? sense_of(get<std::string>(n, "sense")) : RowSense::kBoth;
    net.add_node(get<int>(n, "id"), rational_of(field(n, "supply")), sense);
  }
  for (const Json& a : field(j, "arcs")) {
    net.add_arc(get<int>(a, "id"), get<int>(a, "tail"), get<int>(a, "head"),
                rational_of(field(a, "capacity")));
  }
  return net;
}

Json to_json(const Instance& inst) {
  Json j = to_json(inst.mip.net);
  j["family"] = inst.family;
  j["seed"] = inst.seed;
  Json params = Json::object();
  for (const auto& [k, v] : inst.params) params[k] = v;
  j["params"] = params;
  j["m"] = inst.mip.num_y;
  Json triples = Json::array();
  for (const Triple& t : inst.mip.triples) triples.push_back({{"k", t.k}, {"i", t.arc}, {"j", t.j}});
  j["triples"] = triples;
  Json rows = Json::array();
  for (const YRow& r : inst.mip.y_rows) {
    Json coef = Json::array();
    for (const auto& [idx, c] : r.coef) coef.push_back({idx, rational_json(c)});
    rows.push_back({{"coef", coef}, {"type", row_type_name(r.type)}, {"rhs", rational_json(r.rhs)}});
  }
  j["y_rows"] = rows;
  j["cost"] = {{"x", inst.mip.cost_x}, {"y", inst.mip.cost_y}, {"z", inst.mip.cost_z},
               {"offset", inst.mip.offset}};
  j["supply_nodes"] = inst.supply_nodes;
  j["demand_nodes"] = inst.demand_nodes;
  if (inst.family == "fc") {
    j["fc_arcs"] = inst.fc_arcs;
    j["fc_eps"] = inst.fc_eps;
    j["fc_slope"] = inst.fc_slope;
    j["fc_charge"] = inst.fc_charge;
  }
  if (!inst.conflicts.empty()) j["conflicts"] = inst.conflicts;
  j["resample_attempts"] = inst.resample_attempts;
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.mip.net = network_from_json(j);
  try {
    inst.family = j.value("family", std::string());
    inst.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) inst.params[k] = v.get<double>();
    }
    inst.mip.num_y = get<int>(j, "m");
    for (const Json& t : field(j, "triples")) {
      inst.mip.triples.push_back({get<int>(t, "k"), get<int>(t, "i"), get<int>(t, "j")});
    }
    if (j.contains("y_rows")) {
      for (const Json& r : j.at("y_rows")) {
        YRow row;
        for (const Json& c : field(r, "coef")) row.coef.push_back({c.at(0).get<int>(), rational_of(c.at(1))});
        row.type = row_type_of(get<std::string>(r, "type"));
        row.rhs = rational_of(field(r, "rhs"));
        inst.mip.y_rows.push_back(row);
      }
    }
    if (j.contains("cost")) {
      const Json& c = j.at("cost");
      inst.mip.cost_x = c.value("x", std::vector<double>{});
      inst.mip.cost_y = c.value("y", std::vector<double>{});
      inst.mip.cost_z = c.value("z", std::vector<double>{});
      inst.mip.offset = c.value("offset", 0.0);
    }
    inst.mip.cost_x.resize(inst.mip.net.num_arcs(), 0.0);
    inst.mip.cost_y.resize(inst.mip.num_y, 0.0);
    inst.mip.cost_z.resize(inst.mip.triples.size(), 0.0);
    inst.supply_nodes = j.value("supply_nodes", std::vector<NodeId>{});
    inst.demand_nodes = j.value("demand_nodes", std::vector<NodeId>{});
    inst.fc_arcs = j.value("fc_arcs", std::vector<ArcId>{});
    inst.fc_eps = j.value("fc_eps", std::vector<double>{});
    inst.fc_slope = j.value("fc_slope", std::vector<double>{});
    inst.fc_charge = j.value("fc_charge", std::vector<double>{});
    inst.conflicts = j.value("conflicts", std::vector<std::pair<int, int>>{});
    inst.resample_attempts = j.value("resample_attempts", 0);
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad instance: ") + e.what());
  }
  return inst;
}

Json to_json(const EcrAssignment& a) {
  Json I = Json::array();
  for (const auto& s : a.I) I.push_back(refs_json(s));
  return {{"class", a.class_k}, {"sign", std::string(1, sign_char(a.sign))}, {"I", I},
          {"Ibar", refs_json(a.Ibar)}, {"J", a.J}, {"Jbar", a.Jbar}};
}

EcrAssignment assignment_from_json(const Json& j) {
  EcrAssignment a;
  try {
    a.class_k = get<int>(j, "class");
    const std::string sign = get<std::string>(j, "sign");
    if (sign != "+" && sign != "-") throw JsonSchemaError("bad sign " + sign);
    a.sign = sign == "+" ? Sign::kPlus : Sign::kMinus;
    for (const Json& s : field(j, "I")) a.I.push_back(refs_of(s));
    a.Ibar = refs_of(field(j, "Ibar"));
    a.J = field(j, "J").get<std::set<ArcId>>();
    a.Jbar = field(j, "Jbar").get<std::set<ArcId>>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad assignment: ") + e.what());
  }
  return a;
}

Json to_json(const LinearCut& cut, int set_index) {
  Json q = Json::object();
  for (const auto& [arc, c] : cut.q) q[std::to_string(arc)] = rational_json(c);
  Json r = Json::array();
  for (const Rational& c : cut.r) r.push_back(rational_json(c));
  Json s = Json::object();
  for (const auto& [k, c] : cut.s) s[std::to_string(k)] = rational_json(c);
  Json choices = Json::array();
  for (const RelaxChoice& ch : cut.choices) {
    choices.push_back({{"arc", ch.term.first}, {"j", ch.term.second}, {"option", to_string(ch.option)}});
  }
  Json prov = {{"assignment", to_json(cut.assignment)}, {"choices", choices}};
  if (set_index >= 0) prov["set"] = set_index;
  return {{"q", q}, {"r", r}, {"s", s}, {"t", rational_json(cut.t)}, {"provenance", prov}};
}

LinearCut cut_from_json(const Json& j, int* set_index) {
  LinearCut cut;
  try {
    for (const auto& [arc, c] : field(j, "q").items()) cut.q[std::stoi(arc)] = rational_of(c);
    for (const Json& c : field(j, "r")) cut.r.push_back(rational_of(c));
    for (const auto& [k, c] : field(j, "s").items()) cut.s[std::stoi(k)] = rational_of(c);
    cut.t = rational_of(field(j, "t"));
    if (set_index) *set_index = -1;
    if (j.contains("provenance")) {
      const Json& p = j.at("provenance");
      if (p.contains("assignment")) cut.assignment = assignment_from_json(p.at("assignment"));
      if (p.contains("choices")) {
        for (const Json& ch : p.at("choices")) {
          cut.choices.push_back({{get<int>(ch, "arc"), get<int>(ch, "j")},
                                 option_of(get<std::string>(ch, "option"))});
        }
      }
      if (set_index && p.contains("set")) *set_index = p.at("set").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad cut: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw JsonSchemaError(std::string("bad cut key: ") + e.what());
  }
  return cut;
}

Json to_json(const Point& p) {
  Json x = Json::object();
  for (const auto& [arc, v] : p.x) x[std::to_string(arc)] = v;
  Json z = Json::object();
  for (const auto& [k, v] : p.z) z[std::to_string(k)] = v;
  return {{"x", x}, {"y", p.y}, {"z", z}};
}

Point point_from_json(const Json& j) {
  Point p;
  try {
    for (const auto& [arc, v] : field(j, "x").items()) p.x[std::stoi(arc)] = v.get<double>();
    p.y = field(j, "y").get<std::vector<double>>();
    for (const auto& [k, v] : field(j, "z").items()) p.z[std::stoi(k)] = v.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad point: ") + e.what());
  }
  return p;
}

Json to_json(const TreeStructure& ts) {
  return {{"class", ts.class_k}, {"nodes", ts.nodes}, {"part1", ts.part1}, {"part2", ts.part2},
          {"induced_arcs", ts.induced_arcs}};
}

Json to_json(const ForestStructure& fs) {
  Json trees = Json::array();
  for (const auto& t : fs.trees) trees.push_back(node_sets(t));
  return {{"class", fs.class_k}, {"forest_nodes", node_sets(fs.forest_nodes)}, {"trees", trees},
          {"connection_nodes", fs.connection_nodes}, {"connection_arcs", fs.connection_arcs}};
}

ForestStructure forest_from_json(const Json& j) {
  ForestStructure fs;
  try {
    fs.class_k = get<int>(j, "class");
    fs.forest_nodes = field(j, "forest_nodes").get<std::vector<std::set<NodeId>>>();
    if (j.contains("trees")) fs.trees = j.at("trees").get<std::vector<std::vector<std::set<NodeId>>>>();
    fs.connection_nodes = field(j, "connection_nodes").get<std::set<NodeId>>();
    fs.connection_arcs = field(j, "connection_arcs").get<std::set<ArcId>>();
  } catch (const nlohmann::json::exception& e) {
    throw JsonSchemaError(std::string("bad forest: ") + e.what());
  }
  return fs;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSchemaError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace netcut
