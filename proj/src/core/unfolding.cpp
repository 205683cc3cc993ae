#include "prn/unfolding.hpp"

#include <algorithm>
#include <bit>

namespace prn {

namespace {

bool test_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
  return (row[i / 64] >> (i % 64) & 1u) != 0;
}

void set_bit(std::vector<std::uint64_t>& row, std::size_t i) { row[i / 64] |= std::uint64_t{1} << (i % 64); }

// {v} + regulators(v), increasing.
std::vector<NodeId> event_nodes(const Prn& prn, NodeId v) {
  auto regs = prn.regulators(v);
  std::vector<NodeId> nodes(regs.begin(), regs.end());
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) {
    nodes.insert(it, v);
  }
  return nodes;
}

// Enumerates choices of one condition per slot, pairwise concurrent.
void enumerate_cosets(const OccurrenceNet& net, const std::vector<std::vector<CondId>>& slots,
                      const std::function<void(const std::vector<CondId>&)>& visit) {
  std::vector<CondId> chosen;
  chosen.reserve(slots.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      visit(chosen);
      return;
    }
    for (CondId c : slots[i]) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](CondId d) { return net.co(c, d); });
      if (ok) {
        chosen.push_back(c);
        rec(i + 1);
        chosen.pop_back();
      }
    }
  };
  rec(0);
}

} // namespace

// ---------------------------------------------------------------------------
// OccurrenceNet

OccurrenceNet::OccurrenceNet(const Prn& prn, const State& x0) : prn_(prn), x0_(x0) {
  prn_.check_state(x0_);
  ensure_co_capacity(prn_.node_count());
  for (NodeId v = 0; v < prn_.node_count(); ++v) {
    add_condition(no_event, v, x0_[v]);
    initial_.push_back(static_cast<CondId>(v));
  }
  for (CondId a : initial_) {
    for (CondId b : initial_) {
      if (a != b) {
        set_bit(co_[a], b);
      }
    }
  }
}

void OccurrenceNet::ensure_co_capacity(std::size_t count) {
  std::size_t words = (count + 63) / 64;
  if (words <= co_words_) {
    return;
  }
  co_words_ = std::max(words, co_words_ * 2);
  for (auto& row : co_) {
    row.resize(co_words_, 0);
  }
}

void OccurrenceNet::add_condition(EventId parent, NodeId node, Value value) {
  auto id = static_cast<CondId>(conditions_.size());
  conditions_.push_back({id, parent, node, value, {}});
  ensure_co_capacity(conditions_.size());
  co_.emplace_back(co_words_, 0);
}

bool OccurrenceNet::co(CondId a, CondId b) const {
  if (a >= conditions_.size() || b >= conditions_.size()) {
    throw NetError("condition id out of range");
  }
  return test_bit(co_[a], b);
}

bool OccurrenceNet::blocked(CondId c) const {
  EventId p = condition(c).parent;
  return p != no_event && (events_[p].cutoff || events_[p].beyond_cutoff);
}

EventId OccurrenceNet::add_event(Extension ext) {
  auto nodes = event_nodes(prn_, ext.node);
  if (ext.preset.size() != nodes.size()) {
    throw NetError("preset does not cover the event's nodes");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (condition(ext.preset[i]).node != nodes[i]) {
      throw NetError("preset is not ordered by node");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!co(ext.preset[i], ext.preset[j])) {
        throw NetError("preset is not a co-set");
      }
    }
  }
  if (ext.box.is_empty()) {
    throw NetError("event with an empty parametrisation box");
  }

  auto id = static_cast<EventId>(events_.size());
  Event ev;
  ev.id = id;
  ev.preset = std::move(ext.preset);
  ev.node = ext.node;
  ev.direction = ext.direction;
  ev.from = ext.from;
  ev.coord = ext.coord;
  ev.local_config = std::move(ext.past);
  ev.local_config.push_back(id);
  ev.depth = ext.depth;
  ev.state = std::move(ext.state);
  ev.box = std::move(ext.box);
  for (EventId p : ev.local_config) {
    if (p != id && (events_[p].cutoff || events_[p].beyond_cutoff)) {
      ev.beyond_cutoff = true;
    }
  }

  // Conditions concurrent with every pre-condition.
  std::vector<std::uint64_t> common(co_words_, ~std::uint64_t{0});
  for (CondId c : ev.preset) {
    for (std::size_t w = 0; w < co_words_; ++w) {
      common[w] &= co_[c][w];
    }
    conditions_[c].consumers.push_back(id);
  }
  const std::size_t before = conditions_.size();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Value value = nodes[i] == ev.node ? static_cast<Value>(ev.from + sign(ev.direction))
                                      : condition(ev.preset[i]).value;
    ev.postset.push_back(static_cast<CondId>(conditions_.size()));
    add_condition(id, nodes[i], value);
  }
  common.resize(co_words_, 0);
  for (std::size_t w = 0; w < co_words_; ++w) {
    for (std::uint64_t bits = common[w]; bits != 0; bits &= bits - 1) {
      std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (k >= before) {
        break;
      }
      for (CondId b : ev.postset) {
        set_bit(co_[k], b);
      }
    }
  }
  for (CondId b : ev.postset) {
    auto& row = co_[b];
    for (std::size_t w = 0; w < co_words_; ++w) {
      row[w] = common[w];
    }
    for (CondId other : ev.postset) {
      if (other != b) {
        set_bit(row, other);
      }
    }
  }
  events_.push_back(std::move(ev));
  return id;
}

void OccurrenceNet::mark_cutoff(EventId e, EventId witness) {
  Event& ev = events_.at(e);
  ev.cutoff = true;
  ev.witness = witness;
  for (EventId f = e + 1; f < events_.size(); ++f) {
    auto& cfg = events_[f].local_config;
    if (std::binary_search(cfg.begin(), cfg.end(), e)) {
      events_[f].beyond_cutoff = true;
    }
  }
}

// ---------------------------------------------------------------------------
// Configurations

std::vector<EventId> local_configuration(const OccurrenceNet& net, EventId e) {
  std::vector<EventId> out;
  std::vector<bool> seen(net.events().size(), false);
  std::vector<EventId> todo{e};
  seen.at(e) = true;
  while (!todo.empty()) {
    EventId f = todo.back();
    todo.pop_back();
    out.push_back(f);
    for (CondId c : net.event(f).preset) {
      EventId p = net.condition(c).parent;
      if (p != no_event && !seen[p]) {
        seen[p] = true;
        todo.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_configuration(const OccurrenceNet& net, std::span<const EventId> events) {
  std::vector<EventId> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  std::vector<CondId> consumed;
  for (EventId e : sorted) {
    if (e >= net.events().size()) {
      return false;
    }
    for (CondId c : net.event(e).preset) {
      EventId p = net.condition(c).parent;
      if (p != no_event && !std::binary_search(sorted.begin(), sorted.end(), p)) {
        return false;
      }
      consumed.push_back(c);
    }
  }
  std::sort(consumed.begin(), consumed.end());
  return std::adjacent_find(consumed.begin(), consumed.end()) == consumed.end();
}

std::vector<CondId> cut(const OccurrenceNet& net, std::span<const EventId> events) {
  if (!is_configuration(net, events)) {
    throw NetError("not a configuration");
  }
  const std::size_t n = net.prn().node_count();
  std::vector<CondId> out(net.initial_conditions().begin(), net.initial_conditions().end());
  std::vector<EventId> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end());
  // Ids respect causality, so replaying in id order ends on the cut.
  for (EventId e : sorted) {
    const Event& ev = net.event(e);
    for (std::size_t i = 0; i < ev.preset.size(); ++i) {
      NodeId v = net.condition(ev.preset[i]).node;
      if (out[v] != ev.preset[i]) {
        throw NetError("configuration consumes a condition outside its cut");
      }
      out[v] = ev.postset[i];
    }
  }
  if (out.size() != n) {
    throw NetError("cut does not cover every node");
  }
  return out;
}

State cut_state(const OccurrenceNet& net, std::span<const EventId> events) {
  State x{std::vector<Value>(net.prn().node_count())};
  for (CondId c : cut(net, events)) {
    x.values[net.condition(c).node] = net.condition(c).value;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Extensions

ParamBox inductive_box(const OccurrenceNet& net, const ConstraintEngine& engine,
                       const ParamBox& base, std::span<const CondId> preset,
                       const TransitionBound& bound, NodeId node) {
  ParamBox box = base;
  std::vector<EventId> parents;
  for (CondId c : preset) {
    EventId p = net.condition(c).parent;
    if (p != no_event && std::find(parents.begin(), parents.end(), p) == parents.end()) {
      parents.push_back(p);
      box = intersect(box, net.event(p).box);
    }
  }
  engine.add_transition(box, bound, node);
  return box;
}

ParamBox configuration_box(const OccurrenceNet& net, const ConstraintEngine& engine,
                           std::span<const EventId> events) {
  std::vector<EventId> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end());
  ParamBox box = engine.base_box();
  for (EventId e : sorted) {
    const Event& ev = net.event(e);
    engine.add_transition(box, transition_bound(ev.coord, ev.from, ev.direction), ev.node);
  }
  return box;
}

std::optional<Extension> make_extension(const OccurrenceNet& net, const ConstraintEngine& engine,
                                        const ParamBox& base, std::vector<CondId> preset,
                                        NodeId node, Direction direction) {
  const Prn& prn = net.prn();
  auto nodes = event_nodes(prn, node);
  const std::size_t vpos =
      static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin());
  const Value from = net.condition(preset.at(vpos)).value;
  const int to = from + sign(direction);
  if (to < 0 || to > prn.max_value(node)) {
    return std::nullopt;
  }
  std::vector<Value> omega;
  for (NodeId u : prn.regulators(node)) {
    auto pos = std::lower_bound(nodes.begin(), nodes.end(), u) - nodes.begin();
    omega.push_back(net.condition(preset[static_cast<std::size_t>(pos)]).value);
  }
  Extension ext;
  ext.node = node;
  ext.direction = direction;
  ext.from = from;
  ext.coord = prn.param_offset(node) + prn.context_index(node, omega);
  ext.box = inductive_box(net, engine, base, preset, transition_bound(ext.coord, from, direction), node);
  if (ext.box.is_empty()) {
    return std::nullopt;
  }
  std::uint32_t depth = 0;
  for (CondId c : preset) {
    EventId p = net.condition(c).parent;
    if (p != no_event) {
      const Event& parent = net.event(p);
      depth = std::max(depth, parent.depth);
      std::vector<EventId> merged;
      std::set_union(ext.past.begin(), ext.past.end(), parent.local_config.begin(),
                     parent.local_config.end(), std::back_inserter(merged));
      ext.past = std::move(merged);
    }
  }
  ext.depth = depth + 1;
  ext.state = net.initial_state();
  for (EventId p : ext.past) {
    const Event& ev = net.event(p);
    ext.state.values[ev.node] = static_cast<Value>(ev.from + sign(ev.direction));
  }
  ext.state.values[node] = static_cast<Value>(to);
  ext.preset = std::move(preset);
  return ext;
}

std::vector<Extension> extensions_after(const OccurrenceNet& net, const ConstraintEngine& engine,
                                        const ParamBox& base, EventId e) {
  const Prn& prn = net.prn();
  const std::size_t n = prn.node_count();
  std::vector<Extension> out;
  auto emit = [&](const std::vector<CondId>& preset, NodeId w) {
    for (Direction d : {Direction::Up, Direction::Down}) {
      if (auto ext = make_extension(net, engine, base, preset, w, d)) {
        out.push_back(std::move(*ext));
      }
    }
  };

  if (e == no_event) {
    for (NodeId w = 0; w < n; ++w) {
      std::vector<CondId> preset;
      for (NodeId x : event_nodes(prn, w)) {
        preset.push_back(net.initial_conditions()[x]);
      }
      emit(preset, w);
    }
    return out;
  }

  const Event& ev = net.event(e);
  std::vector<std::optional<CondId>> fixed(n);
  for (CondId b : ev.postset) {
    fixed[net.condition(b).node] = b;
  }
  // Candidate partners: concurrent with all of e's post-conditions and not blocked.
  std::vector<std::vector<CondId>> pool(n);
  const CondId probe = ev.postset.front();
  for (CondId c = 0; c < net.conditions().size(); ++c) {
    if (net.co(probe, c) && !fixed[net.condition(c).node] && !net.blocked(c)) {
      pool[net.condition(c).node].push_back(c);
    }
  }
  for (NodeId w = 0; w < n; ++w) {
    auto nodes = event_nodes(prn, w);
    bool touches = std::any_of(nodes.begin(), nodes.end(), [&](NodeId x) { return fixed[x].has_value(); });
    if (!touches) {
      continue;
    }
    std::vector<std::vector<CondId>> slots;
    for (NodeId x : nodes) {
      slots.push_back(fixed[x] ? std::vector<CondId>{*fixed[x]} : pool[x]);
    }
    enumerate_cosets(net, slots, [&](const std::vector<CondId>& preset) { emit(preset, w); });
  }
  return out;
}

std::vector<Extension> possible_extensions(const OccurrenceNet& net, const ConstraintEngine& engine) {
  const Prn& prn = net.prn();
  const ParamBox base = engine.base_box();
  std::vector<std::vector<CondId>> pool(prn.node_count());
  for (const auto& c : net.conditions()) {
    if (!net.blocked(c.id)) {
      pool[c.node].push_back(c.id);
    }
  }
  std::vector<Extension> out;
  for (NodeId w = 0; w < prn.node_count(); ++w) {
    std::vector<std::vector<CondId>> slots;
    for (NodeId x : event_nodes(prn, w)) {
      slots.push_back(pool[x]);
    }
    enumerate_cosets(net, slots, [&](const std::vector<CondId>& preset) {
      for (Direction d : {Direction::Up, Direction::Down}) {
        bool exists = false;
        for (EventId f : net.condition(preset.front()).consumers) {
          const Event& ev = net.event(f);
          exists = exists || (ev.node == w && ev.direction == d && ev.preset == preset);
        }
        if (exists) {
          continue;
        }
        if (auto ext = make_extension(net, engine, base, preset, w, d)) {
          out.push_back(std::move(*ext));
        }
      }
    });
  }
  return out;
}

} // namespace prn
