#include "aqp/graph.hpp"

#include <random>
#include <string>
#include <vector>

#include "aqp/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aqp;
using aqp::test::RecordingObserver;
using aqp::test::make_spec;

namespace {

PipelineGraph build(const std::vector<NodeSpec>& specs,
                    std::string_view root = "root") {
  return build_graph(specs, root, aqp::test::test_registry());
}

std::vector<std::string> run_order(PipelineGraph& graph) {
  ResultStore store;
  RecordingObserver observer;
  traverse(graph, store, &observer);
  return observer.visited;
}

}  // namespace

TEST_CASE("children run depth-first in declaration order") {
  PipelineGraph graph = build({
      make_spec("root", "identity", {"b", "c"}),
      make_spec("b", "identity", {"d"}),
      make_spec("c", "identity", {}),
      make_spec("d", "identity", {}),
  });
  CHECK(run_order(graph) ==
        std::vector<std::string>{"root", "b", "d", "c"});
}

TEST_CASE("halt prunes only the halting subtree") {
  PipelineGraph graph = build({
      make_spec("root", "identity", {"b", "c"}),
      make_spec("b", "test_halt", {"d"}),
      make_spec("c", "identity", {}),
      make_spec("d", "identity", {}),
  });
  ResultStore store;
  RecordingObserver observer;
  traverse(graph, store, &observer);
  CHECK(observer.visited == std::vector<std::string>{"root", "b", "c"});
  REQUIRE(observer.statuses.size() == 3);
  CHECK(observer.statuses[0] == ExecStatus::proceed);
  CHECK(observer.statuses[1] == ExecStatus::halt);
  CHECK(observer.statuses[2] == ExecStatus::proceed);
}

TEST_CASE("a single node pipeline visits just the root") {
  PipelineGraph graph = build({make_spec("root", "identity", {})});
  CHECK(run_order(graph) == std::vector<std::string>{"root"});
}

TEST_CASE("diamond nodes execute once per arrival") {
  PipelineGraph graph = build({
      make_spec("root", "identity", {"left", "right"}),
      make_spec("left", "identity", {"shared"}),
      make_spec("right", "identity", {"shared"}),
      make_spec("shared", "identity", {}),
  });
  CHECK(run_order(graph) == std::vector<std::string>{"root", "left",
                                                     "shared", "right",
                                                     "shared"});
}

TEST_CASE("random dags follow the recursive preorder oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const aqp::test::RandomDag dag = aqp::test::make_random_dag(rng);
    PipelineGraph graph = build(dag.specs, dag.root);
    const std::vector<std::string> expected =
        aqp::test::preorder_oracle(dag.specs, dag.halts, dag.root);
    CAPTURE(trial);
    CHECK(run_order(graph) == expected);
  }
}

TEST_CASE("nodes are reset at the start of every traversal") {
  // The sink would overflow on the second run if its counter survived.
  PipelineGraph graph = build({
      make_spec("root", "identity", {"s"}),
      make_spec("s", "sink", {}, Json{{"expected_count", 1}}),
  });
  for (int run = 0; run < 3; ++run) {
    ResultStore store;
    CHECK_NOTHROW(traverse(graph, store));
  }
}

TEST_CASE("a sink proceeds only on its final expected arrival") {
  NodeSpec root = make_spec("root", "constant", {"left", "right"},
                            Json{{"value", 5.0}});
  root.output_key = "x";
  PipelineGraph graph = build({
      root,
      make_spec("left", "identity", {"s"}),
      make_spec("right", "identity", {"s"}),
      make_spec("s", "sink", {"after"},
                Json{{"expected_count", 2}, {"capture", Json::array({"x"})}}),
      make_spec("after", "identity", {}),
  });
  ResultStore store;
  RecordingObserver observer;
  traverse(graph, store, &observer);
  // First arrival halts, second proceeds into "after" exactly once.
  CHECK(observer.visited ==
        std::vector<std::string>{"root", "left", "s", "right", "s", "after"});
  const StoreBox& box = store.get<StoreBox>("s");
  CHECK(box->get<double>("x") == 5.0);
}

TEST_CASE("a third arrival overflows the sink") {
  PipelineGraph graph = build({
      make_spec("root", "identity", {"a", "b", "c"}),
      make_spec("a", "identity", {"s"}),
      make_spec("b", "identity", {"s"}),
      make_spec("c", "identity", {"s"}),
      make_spec("s", "sink", {}, Json{{"expected_count", 2}}),
  });
  ResultStore store;
  try {
    traverse(graph, store);
    FAIL("expected invocation overflow");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invocation_overflow);
    REQUIRE(!e.path().empty());
    CHECK(e.path().back() == "s");
  }
}

namespace {

NodeSpec loop_spec(Json params, std::vector<std::string> children = {}) {
  NodeSpec spec = make_spec("root", "loop", std::move(children),
                            std::move(params));
  spec.output_key = "runs";
  return spec;
}

}  // namespace

TEST_CASE("loop runs its pipeline once per item on cloned stores") {
  PipelineGraph graph = build({loop_spec(
      Json{{"iterable_key", "items"},
           {"capture", Json::array({"val"})},
           {"pipeline", Json{{"root", Json{{"type", "test_double"},
                                           {"output_key", "val"}}}}}})});
  ResultStore store;
  store.set("items", std::vector<std::int64_t>{10, 20});
  traverse(graph, store);

  const StoreBox& runs = store.get<StoreBox>("runs");
  CHECK(runs->keys() == std::vector<std::string>{"0", "1"});
  CHECK(runs->get<StoreBox>("0")->get<double>("val") == 20.0);
  CHECK(runs->get<StoreBox>("1")->get<double>("val") == 40.0);
  // Captured iterations keep only the capture keys.
  CHECK(!runs->get<StoreBox>("0")->contains("item"));
  CHECK(!store.contains("runs_failures"));
}

TEST_CASE("loop without capture keeps the whole iteration store") {
  PipelineGraph graph = build({loop_spec(
      Json{{"iterable_key", "items"},
           {"pipeline", Json{{"root", Json{{"type", "test_double"},
                                           {"output_key", "val"}}}}}})});
  ResultStore store;
  store.set("items", std::vector<std::int64_t>{3});
  traverse(graph, store);
  const StoreBox& runs = store.get<StoreBox>("runs");
  CHECK(runs->get<StoreBox>("0")->contains("item"));
  CHECK(runs->get<StoreBox>("0")->contains("items"));
  CHECK(runs->get<StoreBox>("0")->get<double>("val") == 6.0);
}

TEST_CASE("a failed iteration is recorded, later ones still run") {
  PipelineGraph graph = build({loop_spec(
      Json{{"iterable_key", "items"},
           {"capture", Json::array({"ok"})},
           {"pipeline", Json{{"root", Json{{"type", "test_fail_negative"},
                                           {"output_key", "ok"}}}}}})});
  ResultStore store;
  store.set("items", std::vector<std::int64_t>{3, -1, 5});
  traverse(graph, store);

  const StoreBox& runs = store.get<StoreBox>("runs");
  CHECK(runs->get<StoreBox>("0")->get<double>("ok") == 3.0);
  CHECK(runs->get<StoreBox>("2")->get<double>("ok") == 5.0);
  const StoreBox& failed = runs->get<StoreBox>("1");
  CHECK(failed->get<std::string>("error") == "BadParam");
  CHECK(!failed->contains("ok"));
  CHECK(store.get<std::vector<std::int64_t>>("runs_failures") ==
        std::vector<std::int64_t>{1});
}

TEST_CASE("an empty iterable still runs the loop's children") {
  PipelineGraph graph = build({
      loop_spec(Json{{"iterable_key", "items"},
                     {"pipeline", Json{{"root", Json{{"type", "identity"}}}}}},
                {"after"}),
      make_spec("after", "identity", {}),
  });
  ResultStore store;
  store.set("items", std::vector<std::int64_t>{});
  RecordingObserver observer;
  traverse(graph, store, &observer);
  CHECK(observer.visited == std::vector<std::string>{"root", "after"});
  CHECK(store.get<StoreBox>("runs")->size() == 0);
}

TEST_CASE("a missing iterable is an error naming the key") {
  PipelineGraph graph = build({
      make_spec("root", "loop", {},
                Json{{"iterable_key", "absent"},
                     {"pipeline",
                      Json{{"root", Json{{"type", "identity"}}}}}}),
  });
  ResultStore store;
  try {
    traverse(graph, store);
    FAIL("expected missing iterable");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_iterable);
    CHECK(std::string(e.what()).find("absent") != std::string::npos);
  }
}

TEST_CASE("encapsulation shares the caller's store") {
  PipelineGraph graph = build({
      make_spec("root", "encapsulation", {},
                Json{{"pipeline",
                      Json{{"root", Json{{"type", "constant"},
                                         {"value", 2.5},
                                         {"output_key", "from_inner"}}}}}}),
  });
  ResultStore store;
  store.set("item", 1.0);
  traverse(graph, store);
  CHECK(store.get<double>("from_inner") == 2.5);
}

TEST_CASE("errors from nested pipelines carry the node id path") {
  PipelineGraph graph = build({
      make_spec("root", "encapsulation", {},
                Json{{"pipeline",
                      Json{{"root", Json{{"type", "test_double"}}}}}}),
  });
  ResultStore store;  // no "item" key, the inner node throws
  try {
    traverse(graph, store);
    FAIL("expected missing key");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_key);
    REQUIRE(e.path().size() == 2);
    CHECK(e.path() == std::vector<std::string>{"root", "root"});
  }
}

TEST_CASE("build_graph rejects bad shapes") {
  const NodeRegistry& registry = aqp::test::test_registry();
  auto expect = [&](std::vector<NodeSpec> specs, std::string_view root,
                    errc code) {
    try {
      build_graph(specs, root, registry);
      FAIL_CHECK("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect({make_spec("a", "identity", {}), make_spec("a", "identity", {})},
         "a", errc::duplicate_id);
  expect({make_spec("root", "identity", {"ghost"})}, "root",
         errc::dangling_child);
  expect({make_spec("root", "no_such_type", {})}, "root",
         errc::unknown_node_type);
  expect({make_spec("a", "identity", {})}, "root", errc::missing_root);
}

TEST_CASE("build_graph reports a verifiable cycle witness") {
  std::vector<NodeSpec> specs{
      make_spec("a", "identity", {"b"}),
      make_spec("b", "identity", {"c"}),
      make_spec("c", "identity", {"a"}),
  };
  try {
    build_graph(specs, "a", aqp::test::test_registry());
    FAIL("expected cycle");
  } catch (const Error& e) {
    CHECK(e.code() == errc::cycle_detected);
    CHECK(aqp::test::witness_is_cycle(specs, e.path()));
  }
}

TEST_CASE("find_cycle ignores dangling edges and clears on acyclic") {
  std::vector<NodeSpec> acyclic{
      make_spec("root", "identity", {"a", "missing"}),
      make_spec("a", "identity", {}),
  };
  CHECK(find_cycle(acyclic).empty());

  std::vector<NodeSpec> looped{
      make_spec("x", "identity", {"y"}),
      make_spec("y", "identity", {"x"}),
  };
  const std::vector<std::string> witness = find_cycle(looped);
  CHECK(aqp::test::witness_is_cycle(looped, witness));
}

TEST_CASE("random cyclic and acyclic specs are classified correctly") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto acyclic = aqp::test::make_random_acyclic(rng);
    CAPTURE(trial);
    CHECK(find_cycle(acyclic).empty());
    const auto cyclic = aqp::test::make_random_cyclic(rng);
    const std::vector<std::string> witness = find_cycle(cyclic);
    REQUIRE(!witness.empty());
    CHECK(aqp::test::witness_is_cycle(cyclic, witness));
  }
}

TEST_CASE("unreachable nodes are reported but kept") {
  PipelineGraph graph = build({
      make_spec("root", "identity", {"a"}),
      make_spec("a", "identity", {}),
      make_spec("orphan", "identity", {}),
  });
  CHECK(graph.unreachable() == std::vector<std::string>{"orphan"});
  CHECK(graph.contains("orphan"));
  CHECK(run_order(graph) == std::vector<std::string>{"root", "a"});
}
