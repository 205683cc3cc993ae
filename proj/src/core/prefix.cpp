#include "prn/prefix.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <queue>

namespace prn {

std::uint32_t ParikhVector::count(std::size_t coord) const {
  auto range = std::equal_range(word.begin(), word.end(), static_cast<std::uint32_t>(coord));
  return static_cast<std::uint32_t>(range.second - range.first);
}

std::vector<std::uint32_t> ParikhVector::dense(std::size_t param_count) const {
  std::vector<std::uint32_t> out(param_count, 0);
  for (auto c : word) {
    ++out.at(c);
  }
  return out;
}

ParikhVector parikh(const OccurrenceNet& net, std::span<const EventId> config) {
  ParikhVector p;
  for (EventId e : config) {
    p.word.push_back(static_cast<std::uint32_t>(net.event(e).coord));
  }
  std::sort(p.word.begin(), p.word.end());
  return p;
}

FoataForm foata(const OccurrenceNet& net, std::span<const EventId> config) {
  std::vector<EventId> sorted(config.begin(), config.end());
  std::sort(sorted.begin(), sorted.end());
  // Layer of an event: one more than the deepest predecessor inside the configuration.
  std::map<EventId, std::size_t> layer;
  FoataForm f;
  for (EventId e : sorted) {
    std::size_t l = 1;
    for (CondId c : net.event(e).preset) {
      EventId p = net.condition(c).parent;
      if (p != no_event) {
        auto it = layer.find(p);
        if (it == layer.end()) {
          throw NetError("configuration is not causally closed");
        }
        l = std::max(l, it->second + 1);
      }
    }
    layer[e] = l;
    if (f.layers.size() < l) {
      f.layers.resize(l);
    }
    f.layers[l - 1].word.push_back(static_cast<std::uint32_t>(net.event(e).coord));
  }
  for (auto& p : f.layers) {
    std::sort(p.word.begin(), p.word.end());
  }
  return f;
}

std::strong_ordering compare_parikh(const ParikhVector& a, const ParikhVector& b) {
  return std::lexicographical_compare_three_way(a.word.begin(), a.word.end(), b.word.begin(),
                                                b.word.end());
}

std::strong_ordering compare_foata(const FoataForm& a, const FoataForm& b) {
  std::size_t n = std::min(a.layers.size(), b.layers.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare_parikh(a.layers[i], b.layers[i]); c != 0) {
      return c;
    }
  }
  return a.layers.size() <=> b.layers.size();
}

std::strong_ordering adequate_compare(const OccurrenceNet& net, std::span<const EventId> a,
                                      std::span<const EventId> b) {
  if (auto c = a.size() <=> b.size(); c != 0) {
    return c;
  }
  if (auto c = compare_parikh(parikh(net, a), parikh(net, b)); c != 0) {
    return c;
  }
  return compare_foata(foata(net, a), foata(net, b));
}

OrderKey order_key(const OccurrenceNet& net, const Extension& ext) {
  OrderKey key;
  key.size = ext.past.size() + 1;
  key.parikh.word.reserve(key.size);
  key.foata.layers.resize(ext.depth);
  // Within any configuration containing it, an event sits at its global depth.
  for (EventId e : ext.past) {
    const Event& ev = net.event(e);
    key.parikh.word.push_back(static_cast<std::uint32_t>(ev.coord));
    key.foata.layers[ev.depth - 1].word.push_back(static_cast<std::uint32_t>(ev.coord));
  }
  key.parikh.word.push_back(static_cast<std::uint32_t>(ext.coord));
  key.foata.layers[ext.depth - 1].word.push_back(static_cast<std::uint32_t>(ext.coord));
  std::sort(key.parikh.word.begin(), key.parikh.word.end());
  for (auto& l : key.foata.layers) {
    std::sort(l.word.begin(), l.word.end());
  }
  key.preset = ext.preset;
  std::sort(key.preset.begin(), key.preset.end());
  key.node = ext.node;
  key.direction = ext.direction;
  return key;
}

std::strong_ordering compare_keys(const OrderKey& a, const OrderKey& b) {
  if (auto c = a.size <=> b.size; c != 0) {
    return c;
  }
  if (auto c = compare_parikh(a.parikh, b.parikh); c != 0) {
    return c;
  }
  if (auto c = compare_foata(a.foata, b.foata); c != 0) {
    return c;
  }
  if (auto c = a.preset <=> b.preset; c != 0) {
    return c;
  }
  if (auto c = a.node <=> b.node; c != 0) {
    return c;
  }
  return sign(a.direction) <=> sign(b.direction);
}

std::optional<EventId> is_cutoff(const OccurrenceNet& net, EventId e) {
  const Event& ev = net.event(e);
  for (const Event& other : net.events()) {
    if (other.id != e && other.state == ev.state && box_is_subset(ev.box, other.box)) {
      return other.id;
    }
  }
  return std::nullopt;
}

CfpStats CfpResult::stats() const {
  CfpStats s;
  s.events_with_cutoffs = net.events().size();
  s.events = static_cast<std::size_t>(std::count_if(net.events().begin(), net.events().end(),
                                                    [](const Event& e) { return !e.cutoff; }));
  s.conditions = net.conditions().size();
  return s;
}

namespace {

struct Candidate {
  Extension ext;
  OrderKey key;
};

struct LaterFirst {
  bool operator()(const Candidate& a, const Candidate& b) const { return compare_keys(a.key, b.key) > 0; }
};

} // namespace

CfpResult build_cfp(const Prn& prn, const ConstraintSet& r, const State& x0, const CfpLimits& limits) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  CfpResult result{OccurrenceNet(prn, x0), CfpStatus::Complete, 0};
  OccurrenceNet& net = result.net;
  const ConstraintEngine engine(net.prn(), r);
  const ParamBox base = engine.base_box();
  if (base.is_empty()) {
    result.runtime_ms = elapsed_ms();
    return result;
  }

  std::priority_queue<Candidate, std::vector<Candidate>, LaterFirst> queue;
  auto enqueue = [&](std::vector<Extension> exts) {
    for (auto& ext : exts) {
      OrderKey key = order_key(net, ext);
      queue.push({std::move(ext), std::move(key)});
    }
  };
  enqueue(extensions_after(net, engine, base, no_event));

  std::map<State, std::vector<EventId>> by_state;
  std::size_t steps = 0;
  while (!queue.empty()) {
    if (limits.max_events && net.events().size() >= *limits.max_events) {
      result.status = CfpStatus::EventLimit;
      break;
    }
    if (limits.max_seconds && (++steps % 64) == 0 && elapsed_ms() > *limits.max_seconds * 1000) {
      result.status = CfpStatus::TimeLimit;
      break;
    }
    Candidate cand = queue.top();
    queue.pop();
    // Candidates extending a (possibly later declared) cut-off are dropped.
    bool stale = std::any_of(cand.ext.past.begin(), cand.ext.past.end(),
                             [&](EventId p) { return net.event(p).cutoff; });
    if (stale) {
      continue;
    }

    EventId e = net.add_event(std::move(cand.ext));
    auto& same = by_state[net.event(e).state];
    for (EventId other : same) {
      if (box_is_subset(net.event(e).box, net.event(other).box)) {
        net.mark_cutoff(e, other);
        break;
      }
    }
    for (EventId other : same) {
      const Event& o = net.event(other);
      if (!o.cutoff && box_is_subset(o.box, net.event(e).box) && !(o.box == net.event(e).box)) {
        net.mark_cutoff(other, e);
      }
    }
    same.push_back(e);

    const Event& ev = net.event(e);
    if (!ev.cutoff && !ev.beyond_cutoff) {
      enqueue(extensions_after(net, engine, base, e));
    }
  }
  result.runtime_ms = elapsed_ms();
  return result;
}

std::set<State> prefix_reachable_states(const OccurrenceNet& net, const ConstraintSet& r,
                                        std::size_t max_configurations) {
  const ConstraintEngine engine(net.prn(), r);
  std::set<State> states;
  ParamBox base = engine.base_box();
  if (base.is_empty()) {
    return states;
  }

  struct Node {
    std::vector<CondId> cut;
    State state;
    ParamBox box;
  };
  std::vector<CondId> start(net.initial_conditions().begin(), net.initial_conditions().end());
  std::set<std::vector<CondId>> seen{start};
  std::deque<Node> todo;
  todo.push_back({start, net.initial_state(), base});
  states.insert(net.initial_state());

  while (!todo.empty()) {
    Node cur = std::move(todo.front());
    todo.pop_front();
    for (CondId c : cur.cut) {
      for (EventId f : net.condition(c).consumers) {
        const Event& ev = net.event(f);
        if (ev.preset.front() != c) {
          continue; // visit each event once, from its first pre-condition
        }
        bool enabled = std::all_of(ev.preset.begin(), ev.preset.end(), [&](CondId p) {
          return cur.cut[net.condition(p).node] == p;
        });
        if (!enabled) {
          continue;
        }
        std::vector<CondId> next = cur.cut;
        for (CondId p : ev.postset) {
          next[net.condition(p).node] = p;
        }
        if (seen.count(next) != 0) {
          continue;
        }
        ParamBox box = cur.box;
        engine.add_transition(box, transition_bound(ev.coord, ev.from, ev.direction), ev.node);
        if (box.is_empty()) {
          continue;
        }
        if (seen.size() >= max_configurations) {
          throw ResourceLimit("more than " + std::to_string(max_configurations) +
                              " configurations in the prefix");
        }
        seen.insert(next);
        State x = cur.state;
        x.values[ev.node] = static_cast<Value>(ev.from + sign(ev.direction));
        states.insert(x);
        todo.push_back({std::move(next), std::move(x), std::move(box)});
      }
    }
  }
  return states;
}

} // namespace prn
