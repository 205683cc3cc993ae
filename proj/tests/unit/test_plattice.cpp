#include "doctest.h"
#include "fixtures.hpp"

using namespace prn;
using fixtures::box;
using fixtures::st;

TEST_CASE("narrowing by two transitions") {
  Prn prn = fixtures::running_prn();
  std::vector<Transition> t{{st({1, 1, 0}), 2, Direction::Up}, {st({1, 1, 1}), 1, Direction::Down}};
  ParamBox b = p_abs(prn, t);
  CHECK(b == box("00000000100", "22210111111"));
  CHECK(format_box(b) == "(⟨00000000100⟩,⟨22210111111⟩)");
  CHECK(box_size(b).value == 6912 / 2 / 2);
}

TEST_CASE("transition bounds") {
  Prn prn = fixtures::running_prn();
  auto up = transition_bound(prn, {st({1, 1, 0}), 2, Direction::Up});
  CHECK(up.coord == 8);
  CHECK(up.is_lower);
  CHECK(up.value == 1);
  auto down = transition_bound(prn, {st({2, 0, 0}), 0, Direction::Down});
  CHECK(down.coord == 2);
  CHECK_FALSE(down.is_lower);
  CHECK(down.value == 1);
}

TEST_CASE("contradicting transitions give the empty box") {
  Prn prn = fixtures::running_prn();
  std::vector<Transition> t{{st({0, 0, 0}), 2, Direction::Up}, {st({0, 0, 1}), 2, Direction::Down}};
  ParamBox b = p_abs(prn, t);
  CHECK(b.is_empty());
  CHECK(format_box(b) == "∅");
  CHECK(box_size(b).value == 0);
  CHECK(narrow_transition(prn, b, t[0]).is_empty());
}

TEST_CASE("box lattice operations") {
  ParamBox a = box("000", "211");
  ParamBox b = box("100", "111");
  CHECK(box_is_subset(b, a));
  CHECK_FALSE(box_is_subset(a, b));
  CHECK(box_is_subset(ParamBox::empty(), b));
  CHECK(intersect(a, b) == b);
  CHECK(intersect(box("200", "211"), box("000", "111")).is_empty());
  CHECK(intersect(a, ParamBox::empty()).is_empty());
  CHECK(box("10", "01").is_empty());
  CHECK(contains(a, Parametrisation{{2, 0, 1}}));
  CHECK_FALSE(contains(b, Parametrisation{{0, 0, 0}}));
}

TEST_CASE("bound updates report change and collapse") {
  ParamBox b = box("00", "11");
  CHECK(b.raise_lower(0, 1));
  CHECK_FALSE(b.raise_lower(0, 1));
  CHECK(b.lower_upper(1, 0));
  CHECK(b == box("10", "10"));
  CHECK(b.lower_upper(0, 0));
  CHECK(b.is_empty());
  CHECK(b == ParamBox::empty());
}
