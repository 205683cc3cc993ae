#include "prn/oracle.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "format.hpp"

namespace prn::oracle {

namespace {

bool leq(const Parametrisation& a, const Parametrisation& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      return false;
    }
  }
  return true;
}

std::string format_transitions(const Prn& prn, std::span<const Transition> ts) {
  std::string out = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out += (i ? "; " : "") + format_transition(prn, ts[i]);
  }
  return out + "}";
}

} // namespace

void check_scale(const Prn& prn, std::uint64_t cap) {
  BigCount n = prn.parametrisation_count();
  if (n.saturated || n.value > cap) {
    throw ScaleError("parametrisation space has " + n.to_string() +
                     " elements, above the enumeration cap of " + std::to_string(cap));
  }
}

void for_each_parametrisation(const Prn& prn,
                              const std::function<bool(const Parametrisation&)>& visit,
                              std::uint64_t cap) {
  check_scale(prn, cap);
  Parametrisation p = prn.lowest_parametrisation();
  const Parametrisation top = prn.highest_parametrisation();
  while (true) {
    if (!visit(p)) {
      return;
    }
    // Odometer, last coordinate fastest.
    std::size_t i = p.size();
    while (i > 0 && p.values[i - 1] == top[i - 1]) {
      p.values[i - 1] = 0;
      --i;
    }
    if (i == 0) {
      return;
    }
    ++p.values[i - 1];
  }
}

bool concrete_enables(const Prn& prn, const Parametrisation& p, const Transition& t) {
  prn.check_transition(t);
  Value target = p[prn.param_coordinate(t.node, prn.regulator_projection(t.node, t.source))];
  int x = t.source[t.node];
  return t.direction == Direction::Up ? target >= x + 1 : target <= x - 1;
}

bool concrete_satisfies(const Prn& prn, const Parametrisation& p, const InfluenceConstraint& c) {
  const NodeId v = c.target;
  const std::size_t pos = prn.regulator_position(v, c.regulator).value();
  const std::size_t offset = prn.param_offset(v);
  for (std::size_t k = 0; k < prn.context_count(v); ++k) {
    std::vector<Value> omega = prn.context_values(v, k);
    if (omega[pos] == 0) {
      continue;
    }
    std::vector<Value> below = omega;
    --below[pos];
    Value hi = p[offset + k];
    Value lo = p[offset + prn.context_index(v, below)];
    switch (c.kind) {
    case InfluenceKind::Positive:
      if (hi < lo) {
        return false;
      }
      break;
    case InfluenceKind::Negative:
      if (hi > lo) {
        return false;
      }
      break;
    case InfluenceKind::Observable:
      if (hi != lo) {
        return true;
      }
      break;
    }
  }
  return c.kind != InfluenceKind::Observable;
}

bool concrete_satisfies_minmax(const Prn& prn, const ConstraintSet& r, const Parametrisation& p) {
  if (!r.minmax()) {
    return true;
  }
  auto skipped = minmax_skipped_nodes(prn, r);
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    if (std::find(skipped.begin(), skipped.end(), v) != skipped.end()) {
      continue;
    }
    auto regs = prn.regulators(v);
    std::vector<Value> high;
    std::vector<Value> low;
    for (NodeId u : regs) {
      bool positive = r.sign(u, v) > 0;
      high.push_back(positive ? prn.max_value(u) : 0);
      low.push_back(positive ? 0 : prn.max_value(u));
    }
    if (p[prn.param_offset(v) + prn.context_index(v, high)] != prn.max_value(v) ||
        p[prn.param_offset(v) + prn.context_index(v, low)] != 0) {
      return false;
    }
  }
  return true;
}

bool concrete_satisfies_all(const Prn& prn, const ConstraintSet& r, const Parametrisation& p) {
  for (const auto& c : r.constraints()) {
    if (!concrete_satisfies(prn, p, c)) {
      return false;
    }
  }
  return concrete_satisfies_minmax(prn, r, p);
}

std::vector<Parametrisation> concrete_pRT(const Prn& prn, const ConstraintSet& r,
                                          std::span<const Transition> transitions,
                                          std::uint64_t cap) {
  r.validate(prn);
  std::vector<Parametrisation> out;
  for_each_parametrisation(
      prn,
      [&](const Parametrisation& p) {
        for (const auto& t : transitions) {
          if (!concrete_enables(prn, p, t)) {
            return true;
          }
        }
        if (concrete_satisfies_all(prn, r, p)) {
          out.push_back(p);
        }
        return true;
      },
      cap);
  return out;
}

ParamBox envelope(std::span<const Parametrisation> set) {
  if (set.empty()) {
    return ParamBox::empty();
  }
  std::vector<Value> lower = set.front().values;
  std::vector<Value> upper = set.front().values;
  for (const auto& p : set) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      lower[i] = std::min(lower[i], p[i]);
      upper[i] = std::max(upper[i], p[i]);
    }
  }
  return {std::move(lower), std::move(upper)};
}

std::vector<Parametrisation> box_members(const Prn& prn, const ParamBox& box, std::uint64_t cap) {
  std::vector<Parametrisation> out;
  for_each_parametrisation(
      prn,
      [&](const Parametrisation& p) {
        if (contains(box, p)) {
          out.push_back(p);
        }
        return true;
      },
      cap);
  return out;
}

std::vector<Parametrisation> smallest_convex_sublattice(const Prn& prn,
                                                        std::span<const Parametrisation> set) {
  std::vector<Parametrisation> universe;
  for_each_parametrisation(
      prn,
      [&](const Parametrisation& p) {
        universe.push_back(p);
        return true;
      },
      16);
  const std::size_t n = universe.size();
  auto index_of = [&](const Parametrisation& p) {
    return static_cast<std::size_t>(std::lower_bound(universe.begin(), universe.end(), p) -
                                    universe.begin());
  };
  std::uint32_t required = 0;
  for (const auto& p : set) {
    required |= 1u << index_of(p);
  }
  auto member = [](std::uint32_t mask, std::size_t i) { return (mask >> i & 1u) != 0; };
  auto is_convex_sublattice = [&](std::uint32_t mask) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!member(mask, i)) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!member(mask, j)) {
          continue;
        }
        Parametrisation meet = universe[i];
        Parametrisation join = universe[i];
        for (std::size_t c = 0; c < meet.size(); ++c) {
          meet.values[c] = std::min(universe[i][c], universe[j][c]);
          join.values[c] = std::max(universe[i][c], universe[j][c]);
        }
        if (!member(mask, index_of(meet)) || !member(mask, index_of(join))) {
          return false;
        }
        if (leq(universe[i], universe[j])) {
          for (std::size_t k = 0; k < n; ++k) {
            if (!member(mask, k) && leq(universe[i], universe[k]) && leq(universe[k], universe[j])) {
              return false;
            }
          }
        }
      }
    }
    return true;
  };
  std::uint32_t hull = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & required) == required && is_convex_sublattice(mask)) {
      hull &= mask;
    }
  }
  std::vector<Parametrisation> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (member(hull, i)) {
      out.push_back(universe[i]);
    }
  }
  return out;
}

std::set<State> reachable_states(const Prn& prn, const Parametrisation& p, const State& x0) {
  prn.check_state(x0);
  std::set<State> seen{x0};
  std::deque<State> todo{x0};
  while (!todo.empty()) {
    State x = std::move(todo.front());
    todo.pop_front();
    for (const auto& t : prn.enabled_transitions(p, x)) {
      State y = t.target();
      if (seen.insert(y).second) {
        todo.push_back(std::move(y));
      }
    }
  }
  return seen;
}

std::set<State> reachable_union(const Prn& prn, const ConstraintSet& r, const State& x0,
                                std::uint64_t cap) {
  std::set<State> out;
  for (const auto& p : concrete_pRT(prn, r, {}, cap)) {
    auto reach = reachable_states(prn, p, x0);
    out.insert(reach.begin(), reach.end());
  }
  return out;
}

Verdict check_transition_abstraction(const Prn& prn, std::span<const Transition> transitions) {
  ParamBox box = p_abs(prn, transitions);
  Verdict verdict;
  for_each_parametrisation(prn, [&](const Parametrisation& p) {
    bool enables = std::all_of(transitions.begin(), transitions.end(),
                               [&](const Transition& t) { return concrete_enables(prn, p, t); });
    if (enables != contains(box, p)) {
      verdict.ok = false;
      verdict.detail = "T=" + format_transitions(prn, transitions) + " box=" + format_box(box) +
                       " P=" + format_values(p.values) +
                       (enables ? " enables T but lies outside" : " lies inside but does not enable T");
      return false;
    }
    return true;
  });
  return verdict;
}

Verdict check_constrained_abstraction(const Prn& prn, const ConstraintSet& r,
                       std::span<const Transition> transitions, const Abstraction& abstraction) {
  ParamBox box = abstraction ? abstraction(prn, r, transitions) : p_abs_R(prn, r, transitions);
  auto concrete = concrete_pRT(prn, r, transitions);
  ParamBox env = envelope(concrete);
  Verdict verdict;
  if (!(box == env)) {
    verdict.ok = false;
    verdict.detail = "R=" + format_constraints(prn, r) + " T=" + format_transitions(prn, transitions) +
                     " abstract=" + format_box(box) + " envelope=" + format_box(env) +
                     " |p_R(T)|=" + std::to_string(concrete.size());
  }
  return verdict;
}

namespace {

// Context pairs (k, k2) of v with k before k2 in the monotonicity order.
template <class F>
bool for_each_ordered_pair(const ConstraintEngine& engine, NodeId v, F&& visit) {
  const std::size_t n = engine.prn().context_count(v);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      if (k != k2 && engine.compare(v, k, k2) == MonoCmp::Less && !visit(k, k2)) {
        return false;
      }
    }
  }
  return true;
}

ConstraintSet signs_on(const ConstraintSet& r, NodeId v) {
  ConstraintSet out;
  for (const auto& c : r.constraints()) {
    if (c.target == v && c.is_sign()) {
      out.add(c);
    }
  }
  return out;
}

} // namespace

Verdict check_sign_monotonicity(const Prn& prn, const ConstraintSet& r, const Parametrisation& p,
                                NodeId v) {
  const ConstraintSet signs = signs_on(r, v);
  const ConstraintEngine engine(prn, signs);
  const std::size_t off = prn.param_offset(v);
  bool satisfied = std::all_of(signs.constraints().begin(), signs.constraints().end(),
                               [&](const auto& c) { return concrete_satisfies(prn, p, c); });
  bool monotone = for_each_ordered_pair(engine, v, [&](std::size_t k, std::size_t k2) {
    return p[off + k] <= p[off + k2];
  });
  Verdict verdict;
  if (satisfied != monotone) {
    verdict.ok = false;
    verdict.detail = "node " + prn.name(v) + " R=" + format_constraints(prn, signs) +
                     " P=" + format_values(p.values) + (satisfied ? " satisfied but not monotone"
                                                                  : " monotone but violating");
  }
  return verdict;
}

Verdict check_single_repair(const Prn& prn, const ConstraintSet& r, const Parametrisation& p,
                            NodeId v) {
  std::vector<InfluenceConstraint> obs;
  for (const auto& c : r.constraints()) {
    if (c.target == v && c.kind == InfluenceKind::Observable) {
      obs.push_back(c);
    }
  }
  auto all_hold = [&](const Parametrisation& q) {
    return std::all_of(obs.begin(), obs.end(), [&](const auto& c) { return concrete_satisfies(prn, q, c); });
  };
  bool applicable = prn.max_value(v) > 0 && !all_hold(p) &&
                    std::all_of(obs.begin(), obs.end(), [&](const auto& c) { return prn.max_value(c.regulator) > 0; });
  if (!applicable) {
    return {};
  }
  Parametrisation q = p;
  for (std::size_t k = 0; k < prn.context_count(v); ++k) {
    const std::size_t coord = prn.param_offset(v) + k;
    for (unsigned x = 0; x <= prn.max_value(v); ++x) {
      if (x == p[coord]) {
        continue;
      }
      q.values[coord] = static_cast<Value>(x);
      if (all_hold(q)) {
        return {};
      }
    }
    q.values[coord] = p[coord];
  }
  return {false, "node " + prn.name(v) + " R=" + format_constraints(prn, r) + " P=" +
                     format_values(p.values) + " has no single-parameter repair"};
}

Verdict check_monotone_fixpoint(const Prn& prn, const ConstraintSet& r, const ParamBox& box,
                                NodeId v) {
  const ConstraintSet signs = signs_on(r, v);
  const ConstraintEngine engine(prn, signs);
  ParamBox narrowed = box;
  bool changed = false;
  for (const auto& c : signs.constraints()) {
    changed = engine.narrow_monotonic(narrowed, c) || changed;
  }
  bool monotone = !box.is_empty();
  if (monotone) {
    const std::size_t off = prn.param_offset(v);
    monotone = for_each_ordered_pair(engine, v, [&](std::size_t k, std::size_t k2) {
      return box.lower()[off + k] <= box.lower()[off + k2] && box.upper()[off + k] <= box.upper()[off + k2];
    });
  }
  Verdict verdict;
  if (changed == monotone) {
    verdict.ok = false;
    verdict.detail = "node " + prn.name(v) + " R=" + format_constraints(prn, signs) + " box=" +
                     format_box(box) + (monotone ? " monotone but narrowed" : " not monotone but stable");
  }
  return verdict;
}

Parametrisation random_parametrisation(std::mt19937_64& rng, const Prn& prn) {
  Parametrisation p;
  for (std::size_t i = 0; i < prn.param_count(); ++i) {
    Value m = prn.max_value(prn.coord_node(i));
    p.values.push_back(static_cast<Value>(std::uniform_int_distribution<unsigned>(0, m)(rng)));
  }
  return p;
}

ParamBox random_box(std::mt19937_64& rng, const Prn& prn) {
  auto a = random_parametrisation(rng, prn).values;
  auto b = random_parametrisation(rng, prn).values;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      std::swap(a[i], b[i]);
    }
  }
  return {std::move(a), std::move(b)};
}

RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  while (true) {
    std::size_t n = uniform(1, std::max<std::size_t>(spec.max_nodes, 1));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    InfluenceGraph graph(n, names);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (chance(0.5)) {
          graph.add_influence(u, v);
        }
      }
    }
    std::vector<Value> maxima(n);
    for (auto& m : maxima) {
      m = (spec.max_value > 0 && chance(0.1)) ? 0 : static_cast<Value>(uniform(1, std::max<Value>(spec.max_value, 1)));
    }
    Prn prn(std::move(graph), std::move(maxima));
    BigCount size = prn.parametrisation_count();
    if (size.saturated || size.value > spec.max_parametrisations) {
      continue;
    }

    ConstraintSet r;
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId u : prn.regulators(v)) {
        bool sign_allowed = spec.mode == ConstraintMode::SignOnly || spec.mode == ConstraintMode::Mixed;
        bool obs_allowed =
            spec.mode == ConstraintMode::ObservableOnly || spec.mode == ConstraintMode::Mixed;
        if (sign_allowed) {
          std::size_t s = uniform(0, 2);
          if (s == 1) {
            r.add(u, v, InfluenceKind::Positive);
          } else if (s == 2) {
            r.add(u, v, InfluenceKind::Negative);
          }
        }
        if (obs_allowed && chance(0.5)) {
          r.add(u, v, InfluenceKind::Observable);
        }
      }
    }
    if (spec.allow_minmax && chance(0.3)) {
      r.set_minmax(true);
    }

    auto random_state = [&] {
      State x{std::vector<Value>(n)};
      for (NodeId v = 0; v < n; ++v) {
        x.values[v] = static_cast<Value>(uniform(0, prn.max_value(v)));
      }
      return x;
    };
    std::vector<Transition> transitions;
    std::size_t k = uniform(0, spec.max_transitions);
    for (std::size_t i = 0; i < k; ++i) {
      auto all = prn.all_transitions(random_state());
      if (!all.empty()) {
        transitions.push_back(all[uniform(0, all.size() - 1)]);
      }
    }
    State x0 = random_state();
    return {std::move(prn), std::move(r), std::move(transitions), std::move(x0)};
  }
}

std::string describe(const RandomInstance& inst) {
  const Prn& prn = inst.prn;
  std::ostringstream out;
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    out << "node " << prn.name(v) << ' ' << int(prn.max_value(v)) << '\n';
  }
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    for (NodeId u : prn.regulators(v)) {
      out << "edge " << prn.name(u) << " -> " << prn.name(v) << '\n';
    }
  }
  out << "constraints " << format_constraints(prn, inst.constraints) << '\n';
  out << "transitions " << format_transitions(prn, inst.transitions) << '\n';
  out << "init " << format_state(inst.initial) << '\n';
  return out.str();
}

} // namespace prn::oracle
