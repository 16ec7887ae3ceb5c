#ifndef NETCUT_JSON_IO_H_
#define NETCUT_JSON_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "netcut/ecr.h"
#include "netcut/instances.h"
#include "netcut/model.h"
#include "netcut/network.h"
#include "netcut/structures.h"

namespace netcut {

using Json = nlohmann::ordered_json;

// Schema problems: missing keys, wrong types, bad rationals.
class JsonSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Network& net);
Network network_from_json(const Json& j);

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json to_json(const EcrAssignment& a);
EcrAssignment assignment_from_json(const Json& j);

// {q, r, s, t, provenance}; `set_index` records which relaxation set the cut lives on.
Json to_json(const LinearCut& cut, int set_index = -1);
LinearCut cut_from_json(const Json& j, int* set_index = nullptr);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const TreeStructure& ts);
Json to_json(const ForestStructure& fs);
ForestStructure forest_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace netcut

#endif  // NETCUT_JSON_IO_H_
