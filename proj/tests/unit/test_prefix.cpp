#include "doctest.h"
#include "fixtures.hpp"
#include "prn/oracle.hpp"

using namespace prn;
using fixtures::st;

namespace {
CfpResult signed_prefix() {
  ModelFile m = load_model(fixtures::model_path("signed.prn"));
  return build_cfp(m.prn, m.constraints, m.initial);
}
} // namespace

TEST_CASE("Parikh vector comparison") {
  ParikhVector a{{0, 3}};
  ParikhVector b{{0, 5}};
  ParikhVector c{{0, 0}};
  CHECK(compare_parikh(a, b) < 0);
  CHECK(compare_parikh(c, a) < 0); // two of coordinate 0 beat one
  CHECK(compare_parikh(a, a) == 0);
  CHECK(a.count(3) == 1);
  CHECK(c.count(0) == 2);
  CHECK(a.dense(6) == std::vector<std::uint32_t>{1, 0, 0, 1, 0, 0});
}

TEST_CASE("Foata comparison") {
  FoataForm one{{ParikhVector{{0, 3}}}};
  FoataForm two{{ParikhVector{{0}}, ParikhVector{{3}}}};
  // Word order: the first layer [0] is a proper prefix of [0, 3].
  CHECK(compare_foata(two, one) < 0);
  FoataForm prefix{{ParikhVector{{0, 3}}, ParikhVector{{1}}}};
  CHECK(compare_foata(one, prefix) < 0);
}

TEST_CASE("adequate order on the excerpt") {
  CfpResult r = signed_prefix();
  const auto& net = r.net;
  auto x = fixtures::excerpt(net);
  auto cfg = [&](EventId e) { return net.event(e).local_config; };
  CHECK(adequate_compare(net, cfg(x.e1), cfg(x.e3)) < 0);
  CHECK(adequate_compare(net, cfg(x.e1), cfg(x.e2)) < 0); // coordinate of a before b
  CHECK(adequate_compare(net, cfg(x.e4), cfg(x.e3)) < 0);
  // Same size; {a0, b0, c01} precedes {a0, b0, c11} on the third coordinate,
  // so the cut-off e5 is inserted first and only loses to e3 afterwards.
  CHECK(adequate_compare(net, cfg(x.e5), cfg(x.e3)) < 0);
  auto p = parikh(net, cfg(x.e3));
  CHECK(p.word == std::vector<std::uint32_t>{0, 3, 8});
  auto f = foata(net, cfg(x.e5));
  REQUIRE(f.layers.size() == 3);
  CHECK(f.layers[2].word == std::vector<std::uint32_t>{0});
}

TEST_CASE("cut-off with witness") {
  CfpResult r = signed_prefix();
  auto x = fixtures::excerpt(r.net);
  CHECK(r.net.event(x.e5).cutoff);
  CHECK(r.net.event(x.e5).witness == x.e3);
  CHECK_FALSE(r.net.event(x.e3).cutoff);
  CHECK(is_cutoff(r.net, x.e5) == x.e3);
  CHECK_FALSE(is_cutoff(r.net, x.e1));
}

TEST_CASE("prefix of the sign-only example") {
  ModelFile m = load_model(fixtures::model_path("signed.prn"));
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  CHECK(r.status == CfpStatus::Complete);
  auto s = r.stats();
  CHECK(s.events <= s.events_with_cutoffs);
  CHECK(s.conditions == 3 + [&] {
    std::size_t n = 0;
    for (const auto& e : r.net.events()) {
      n += e.postset.size();
    }
    return n;
  }());
  auto states = prefix_reachable_states(r.net, m.constraints);
  CHECK(states == oracle::reachable_union(m.prn, m.constraints, m.initial));
  CHECK(states.size() == 12);
}

TEST_CASE("events past a cut-off are flagged") {
  ModelFile m = load_model(fixtures::model_path("running_example.prn"));
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  std::size_t flagged = 0;
  for (const auto& e : r.net.events()) {
    bool past_cutoff = false;
    for (EventId f : e.local_config) {
      past_cutoff |= f != e.id && r.net.event(f).cutoff;
    }
    CHECK(e.beyond_cutoff == past_cutoff);
    flagged += past_cutoff;
    // Such events only exist because their predecessor was declared a cut-off
    // after they were inserted; nothing is built on top of them.
    if (past_cutoff) {
      for (CondId c : e.postset) {
        CHECK(r.net.blocked(c));
      }
    }
  }
  CHECK(flagged < r.net.events().size());
}

TEST_CASE("event limit stops construction") {
  ModelFile m = load_model(fixtures::model_path("running_example.prn"));
  CfpLimits lim;
  lim.max_events = 4;
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial, lim);
  CHECK(r.status == CfpStatus::EventLimit);
  CHECK(r.net.events().size() == 4);
}

TEST_CASE("configuration cap") {
  ModelFile m = load_model(fixtures::model_path("running_example.prn"));
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  CHECK_THROWS_AS(prefix_reachable_states(r.net, m.constraints, 2), ResourceLimit);
}

TEST_CASE("contradictory constraints give an empty prefix") {
  ModelFile m = parse_model("node a 1\nnode b 0\nedge b -> a observable\n");
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  CHECK(r.net.events().empty());
  CHECK(prefix_reachable_states(r.net, m.constraints).empty());
}
