#include "doctest.h"
#include "fixtures.hpp"

using namespace prn;
using fixtures::box;
using fixtures::st;

namespace {
CfpResult signed_prefix() {
  ModelFile m = load_model(fixtures::model_path("signed.prn"));
  return build_cfp(m.prn, m.constraints, m.initial);
}
} // namespace

TEST_CASE("initial net") {
  Prn prn = fixtures::running_prn();
  OccurrenceNet net(prn, st({0, 1, 0}));
  CHECK(net.conditions().size() == 3);
  CHECK(net.events().empty());
  CHECK(net.co(0, 1));
  CHECK(net.co(1, 2));
  CHECK(net.condition(1).value == 1);
  CHECK(cut_state(net, {}) == st({0, 1, 0}));
  CHECK_THROWS_AS(OccurrenceNet(prn, st({3, 0, 0})), ModelError);
}

TEST_CASE("excerpt events and their local configurations") {
  CfpResult r = signed_prefix();
  const auto& net = r.net;
  auto x = fixtures::excerpt(net);
  CHECK(local_configuration(net, x.e3) ==
        std::vector<EventId>{std::min(x.e1, x.e2), std::max(x.e1, x.e2), x.e3});
  CHECK(net.event(x.e3).state == st({1, 1, 1}));
  CHECK(net.event(x.e4).state == st({0, 1, 1}));
  CHECK(net.event(x.e5).state == st({1, 1, 1}));
  CHECK(net.event(x.e1).depth == 1);
  CHECK(net.event(x.e3).depth == 2);
  CHECK(net.event(x.e5).depth == 3);
  CHECK(net.event(x.e3).coord == 8);
  CHECK(net.event(x.e4).coord == 6);

  CHECK(net.event(x.e3).box == box("10010000101", "22211111111"));
  CHECK(net.event(x.e5).box == box("10010010101", "22211111111"));
}

TEST_CASE("configurations, conflict and cuts") {
  CfpResult r = signed_prefix();
  const auto& net = r.net;
  auto x = fixtures::excerpt(net);
  std::vector<EventId> c1{x.e1, x.e2, x.e3};
  std::sort(c1.begin(), c1.end());
  CHECK(is_configuration(net, c1));
  CHECK(cut_state(net, c1) == st({1, 1, 1}));
  CHECK(cut(net, c1).size() == 3);

  std::vector<EventId> conflict{x.e1, x.e2, x.e3, x.e4};
  std::sort(conflict.begin(), conflict.end());
  CHECK_FALSE(is_configuration(net, conflict)); // e3 and e4 both consume the initial c condition
  std::vector<EventId> open{x.e3};
  CHECK_FALSE(is_configuration(net, open));
  CHECK_THROWS_AS(cut_state(net, open), NetError);

  // e1 and e2 are concurrent: their post-conditions are co.
  CHECK(net.co(net.event(x.e1).postset[0], net.event(x.e2).postset[0]));
}

TEST_CASE("inductive boxes equal the configuration fold") {
  ModelFile m = load_model(fixtures::model_path("running_example.prn"));
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  ConstraintEngine engine(r.net.prn(), m.constraints);
  for (const auto& e : r.net.events()) {
    CHECK(configuration_box(r.net, engine, e.local_config) == e.box);
    CHECK(cut_state(r.net, e.local_config) == e.state);
  }
}

TEST_CASE("possible extensions of the initial net") {
  ModelFile m = load_model(fixtures::model_path("signed.prn"));
  OccurrenceNet net(m.prn, m.initial);
  ConstraintEngine engine(net.prn(), m.constraints);
  auto exts = possible_extensions(net, engine);
  // a+, b+, c+ from 000; nothing can decrease.
  REQUIRE(exts.size() == 3);
  for (const auto& e : exts) {
    CHECK(e.direction == Direction::Up);
    CHECK(e.past.empty());
  }
  auto after = extensions_after(net, engine, engine.base_box(), no_event);
  CHECK(after.size() == 3);
}
