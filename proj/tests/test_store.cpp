#include "aqp/store.hpp"

#include <vector>

#include "doctest.h"

using namespace aqp;

TEST_CASE("set and typed get round-trip every alternative") {
  ResultStore store;
  store.set("num", 2.5);
  store.set("name", std::string("hello"));
  store.set("list", std::vector<std::int64_t>{1, 2, 3});
  store.set("sig", Signal{{0.1, -0.2}, 8000});

  FeatureMatrix m(2, 2);
  m.at(1, 1) = 4.0;
  store.set("feats", m);

  ResultStore inner;
  inner.set("x", 1.0);
  store.set("box", StoreBox(inner));

  CHECK(store.get<double>("num") == 2.5);
  CHECK(store.get<std::string>("name") == "hello");
  CHECK(store.get<std::vector<std::int64_t>>("list") ==
        std::vector<std::int64_t>{1, 2, 3});
  CHECK(store.get<Signal>("sig").sample_rate == 8000);
  CHECK(store.get<FeatureMatrix>("feats").at(1, 1) == 4.0);
  CHECK(store.get<StoreBox>("box")->get<double>("x") == 1.0);
  CHECK(store.size() == 6);
}

TEST_CASE("missing key and type mismatch are typed errors") {
  ResultStore store;
  store.set("num", 1.0);

  CHECK_THROWS_WITH_AS(store.get<double>("absent"),
                       doctest::Contains("absent"), Error);
  try {
    store.get<double>("absent");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_key);
  }
  try {
    store.get<std::string>("num");
  } catch (const Error& e) {
    CHECK(e.code() == errc::type_mismatch);
    CHECK(std::string(e.what()).find("number") != std::string::npos);
  }
}

TEST_CASE("set replaces existing values") {
  ResultStore store;
  store.set("k", 1.0);
  store.set("k", std::string("now a string"));
  CHECK(store.get<std::string>("k") == "now a string");
  CHECK(store.size() == 1);
}

TEST_CASE("erase removes and keys come back sorted") {
  ResultStore store;
  store.set("zeta", 1.0);
  store.set("alpha", 2.0);
  store.set("mid", 3.0);
  store.erase("mid");
  CHECK(!store.contains("mid"));
  CHECK(store.keys() == std::vector<std::string>{"alpha", "zeta"});
}

TEST_CASE("StoreBox copies are deep") {
  ResultStore inner;
  inner.set("v", 1.0);
  StoreBox a{inner};
  StoreBox b = a;
  b->set("v", 2.0);
  CHECK(a->get<double>("v") == 1.0);
  CHECK(b->get<double>("v") == 2.0);
  CHECK_FALSE(a == b);
  b->set("v", 1.0);
  CHECK(a == b);
}

TEST_CASE("store copies are independent") {
  ResultStore a;
  a.set("v", 1.0);
  ResultStore nested;
  nested.set("deep", 5.0);
  a.set("box", StoreBox(nested));

  ResultStore b = a;
  b.set("v", 9.0);
  b.get<StoreBox>("box")->set("deep", 9.0);

  CHECK(a.get<double>("v") == 1.0);
  CHECK(a.get<StoreBox>("box")->get<double>("deep") == 5.0);
}

TEST_CASE("value_type_name names each alternative") {
  CHECK(value_type_name(Value{1.0}) == "number");
  CHECK(value_type_name(Value{std::string{}}) == "string");
  CHECK(value_type_name(Value{std::vector<std::int64_t>{}}) == "int_list");
  CHECK(value_type_name(Value{Signal{}}) == "signal");
  CHECK(value_type_name(Value{FeatureMatrix{}}) == "feature_matrix");
  CHECK(value_type_name(Value{DatasetTable{}}) == "dataset");
  CHECK(value_type_name(Value{StoreBox{}}) == "store");
}
