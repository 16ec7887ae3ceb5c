#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "fixtures.h"
#include "netcut/json_io.h"

using namespace netcut;
using namespace netcut::testing;

TEST_CASE("network round trip keeps exact data") {
  Network net = spiked_cycle();
  net.set_supply(3, R(7, 3));
  net.set_capacity(84, R(5, 2));
  Json j = to_json(net);
  Network back = network_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.supply(3) == R(7, 3));
  CHECK(back.capacity(84) == R(5, 2));
  CHECK(back.arc(62).tail == 6);
  CHECK(j["nodes"][2]["supply"] == "7/3");
}

TEST_CASE("instance round trip") {
  for (const Instance& inst : {gen_fc(2, 8, 0.2), gen_tr(2, 6, 4)}) {
    Json j = to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.mip.triples.size() == inst.mip.triples.size());
    CHECK(back.mip.cost_z == inst.mip.cost_z);
    CHECK(back.conflicts == inst.conflicts);
  }
}

TEST_CASE("assignment, cut, point and forest round trips") {
  BilinearSet s = full_set(spiked_cycle(), 1);
  EcrAssignment a;
  a.class_k = class_of(s, 15, 1);
  a.I = {{minus(8), minus(2)}};
  a.Ibar = {plus(4), plus(1), plus(6)};
  CHECK(assignment_from_json(to_json(a)) == a);

  AggregatedInequality agg = aggregate(s, a);
  for (const LinearCut& c : relax_all(agg, s)) {
    int set = -1;
    LinearCut back = cut_from_json(to_json(c, 4), &set);
    CHECK(set == 4);
    CHECK(back.same_coefficients(c));
    CHECK(back.assignment == c.assignment);
    CHECK(back.choices == c.choices);
  }

  std::mt19937_64 rng(1);
  Point p = random_point(rng, s);
  Point q = point_from_json(to_json(p));
  CHECK(q.x == p.x);
  CHECK(q.y == p.y);
  CHECK(q.z == p.z);

  BilinearSet s2 = full_set(spiked_cycle(), 2);
  ForestStructure fs;
  fs.class_k = class_of(s2, 15, 1);
  fs.forest_nodes = {{1, 2, 6, 8}, {1, 4}};
  fs.connection_nodes = {3};
  fs.connection_arcs = {84};
  CHECK(forest_from_json(to_json(fs)) == fs);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"arcs": []})")), JsonSchemaError);
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"nodes": [{"id": 1, "supply": "1/0"}], "arcs": []})")),
                  JsonSchemaError);
  CHECK_THROWS_AS(
      assignment_from_json(Json::parse(R"({"class": 1, "sign": "*", "I": [], "Ibar": [], "J": [], "Jbar": []})")),
      JsonSchemaError);
  Network fractional = network_from_json(
      Json::parse(R"({"nodes": [{"id": 1, "supply": 0.5}, {"id": 2, "supply": "-1/2"}],
                      "arcs": [{"id": 1, "tail": 1, "head": 2, "capacity": 3}]})"));
  CHECK(fractional.supply(1) == R(1, 2));
  CHECK(fractional.supply(2) == R(-1, 2));
}

TEST_CASE("file helpers") {
  const std::string path = (std::filesystem::temp_directory_path() / "netcut_json_io_test.json").string();
  Json j = {{"a", 1}, {"b", "x"}};
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::remove(path.c_str());
  CHECK_THROWS(read_json_file(path));
}
