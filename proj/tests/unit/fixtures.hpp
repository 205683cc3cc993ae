#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "prn/io.hpp"
#include "prn/prefix.hpp"

namespace fixtures {

inline std::string model_path(const std::string& file) { return std::string(PRN_MODELS_DIR) + "/" + file; }

// a:2, b:1, c:1; a -> a, b -> b, a -> c, b -> c. No constraints.
inline prn::Prn running_prn() {
  prn::InfluenceGraph g(3, {"a", "b", "c"});
  g.add_influence(0, 0);
  g.add_influence(1, 1);
  g.add_influence(0, 2);
  g.add_influence(1, 2);
  return prn::Prn(std::move(g), {2, 1, 1});
}

// Same graph with a Boolean.
inline prn::Prn boolean_prn() {
  prn::InfluenceGraph g(3, {"a", "b", "c"});
  g.add_influence(0, 0);
  g.add_influence(1, 1);
  g.add_influence(0, 2);
  g.add_influence(1, 2);
  return prn::Prn(std::move(g), {1, 1, 1});
}

inline prn::State st(std::initializer_list<int> v) {
  prn::State x;
  for (int i : v) {
    x.values.push_back(static_cast<prn::Value>(i));
  }
  return x;
}

inline std::vector<prn::Value> digits(const std::string& s) {
  std::vector<prn::Value> out;
  for (char c : s) {
    out.push_back(static_cast<prn::Value>(c - '0'));
  }
  return out;
}

inline prn::ParamBox box(const std::string& lo, const std::string& hi) { return {digits(lo), digits(hi)}; }

// First event on `node` in direction `d` whose strict past is exactly `past`.
inline std::optional<prn::EventId> find_event(const prn::OccurrenceNet& net, prn::NodeId node,
                                              prn::Direction d, std::vector<prn::EventId> past) {
  std::sort(past.begin(), past.end());
  for (const auto& e : net.events()) {
    std::vector<prn::EventId> p = e.local_config;
    p.erase(std::find(p.begin(), p.end(), e.id));
    if (e.node == node && e.direction == d && p == past) {
      return e.id;
    }
  }
  return std::nullopt;
}

// Events e1..e5 of the small prefix example, located by structure.
struct Excerpt {
  prn::EventId e1, e2, e3, e4, e5;
};

inline Excerpt excerpt(const prn::OccurrenceNet& net) {
  using prn::Direction;
  Excerpt x{};
  x.e1 = find_event(net, 0, Direction::Up, {}).value();
  x.e2 = find_event(net, 1, Direction::Up, {}).value();
  x.e3 = find_event(net, 2, Direction::Up, {x.e1, x.e2}).value();
  x.e4 = find_event(net, 2, Direction::Up, {x.e2}).value();
  x.e5 = find_event(net, 0, Direction::Up, {x.e2, x.e4}).value();
  return x;
}

} // namespace fixtures
