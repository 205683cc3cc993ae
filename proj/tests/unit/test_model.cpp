#include "doctest.h"
#include "fixtures.hpp"

using namespace prn;
using fixtures::st;

TEST_CASE("parameter coordinates of the three-node network") {
  Prn prn = fixtures::running_prn();
  CHECK(prn.param_count() == 11);
  CHECK(prn.parametrisation_count() == BigCount{6912, false});
  CHECK(prn.state_count() == BigCount{12, false});
  CHECK(prn.param_offset(0) == 0);
  CHECK(prn.param_offset(1) == 3);
  CHECK(prn.param_offset(2) == 5);
  // c is regulated by (a, b), a most significant.
  CHECK(prn.state_coordinate(2, st({1, 1, 0})) == 8);
  CHECK(prn.state_coordinate(2, st({2, 1, 1})) == 10);
  CHECK(prn.state_coordinate(1, st({1, 1, 1})) == 4);
  CHECK(prn.context_stride(2, 0) == 2);
  CHECK(prn.context_stride(2, 1) == 1);
  CHECK(prn.coord_node(7) == 2);
}

TEST_CASE("context index round trip") {
  Prn prn = fixtures::running_prn();
  for (std::size_t k = 0; k < prn.context_count(2); ++k) {
    auto omega = prn.context_values(2, k);
    CHECK(prn.context_index(2, omega) == k);
    for (std::size_t pos = 0; pos < omega.size(); ++pos) {
      CHECK(prn.context_component(2, k, pos) == omega[pos]);
    }
  }
  auto idx = prn.param_index(9);
  CHECK(idx.node == 2);
  CHECK(prn.context_values(2, idx.context) == std::vector<Value>{2, 0});
}

TEST_CASE("unparametrised and concrete transitions") {
  Prn prn = fixtures::running_prn();
  CHECK(prn.all_transitions(st({0, 0, 0})).size() == 3);
  CHECK(prn.all_transitions(st({1, 0, 0})).size() == 4);

  // With all parameters at zero everything decays.
  auto ts = prn.enabled_transitions(prn.lowest_parametrisation(), st({1, 1, 0}));
  REQUIRE(ts.size() == 2);
  CHECK(ts[0].node == 0);
  CHECK(ts[0].direction == Direction::Down);
  CHECK(ts[1].node == 1);
  CHECK(ts[0].target() == st({0, 1, 0}));

  // At the top every value climbs.
  auto up = prn.enabled_transitions(prn.highest_parametrisation(), st({0, 0, 0}));
  CHECK(up.size() == 3);
  CHECK(format_transition(prn, up[2]) == "000 -(c+)-> 001");
}

TEST_CASE("domain checks") {
  Prn prn = fixtures::running_prn();
  CHECK(prn.valid_state(st({2, 1, 1})));
  CHECK_FALSE(prn.valid_state(st({3, 0, 0})));
  CHECK_FALSE(prn.valid_state(st({0, 0})));
  CHECK_THROWS_AS(prn.check_state(st({0, 2, 0})), ModelError);
  CHECK_THROWS_AS(prn.check_transition({st({2, 0, 0}), 0, Direction::Up}), ModelError);
  CHECK_THROWS_AS(prn.check_node(3), ModelError);
  CHECK(prn.graph().influence_count() == 4);
  CHECK(prn.graph().out_degree(0) == 2);
  CHECK(prn.graph().find("b") == NodeId{1});
  CHECK_FALSE(prn.graph().find("z"));
}

TEST_CASE("parametrisation count saturates") {
  InfluenceGraph g(6);
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = 0; v < 6; ++v) {
      g.add_influence(u, v);
    }
  }
  Prn prn(std::move(g), std::vector<Value>(6, 3));
  CHECK(prn.parametrisation_count().saturated);
}
