#pragma once

// Occurrence nets for regulatory networks: conditions <e, v, j>, events
// <C', v, s>, the concurrency relation between conditions, configurations and
// their cuts, and the computation of possible extensions.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "prn/constraints.hpp"
#include "prn/model.hpp"
#include "prn/plattice.hpp"

namespace prn {

using CondId = std::uint32_t;
using EventId = std::uint32_t;
inline constexpr EventId no_event = std::numeric_limits<EventId>::max();

struct Condition {
  CondId id = 0;
  EventId parent = no_event; // no_event for initial conditions
  NodeId node = 0;
  Value value = 0;
  std::vector<EventId> consumers; // events having this condition in their preset
};

struct Event {
  EventId id = 0;
  std::vector<CondId> preset;  // one condition per node of {v} + regulators(v), by node id
  std::vector<CondId> postset; // same nodes, same order
  NodeId node = 0;
  Direction direction = Direction::Up;
  Value from = 0;          // value of the v-condition in the preset
  std::size_t coord = 0;   // parameter coordinate <v, omega_v(C')>
  std::vector<EventId> local_config; // sorted, includes the event itself
  std::uint32_t depth = 1;           // causal layer, 1 for events with initial presets only
  State state;                       // X of the local configuration
  ParamBox box;                      // abstraction of the local configuration
  bool cutoff = false;
  EventId witness = no_event;
  bool beyond_cutoff = false; // some strict causal predecessor is a cut-off
};

/// A candidate event, not yet part of the net.
struct Extension {
  std::vector<CondId> preset;
  NodeId node = 0;
  Direction direction = Direction::Up;
  Value from = 0;
  std::size_t coord = 0;
  std::vector<EventId> past; // sorted local configuration without the candidate
  std::uint32_t depth = 1;
  State state;
  ParamBox box;
};

/// Raised for malformed configurations and inconsistent insertions.
class NetError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class OccurrenceNet {
public:
  /// The initial net: one condition per node carrying x0, no events.
  OccurrenceNet(const Prn& prn, const State& x0);

  const Prn& prn() const { return prn_; }
  const State& initial_state() const { return x0_; }
  std::span<const Condition> conditions() const { return conditions_; }
  std::span<const Event> events() const { return events_; }
  const Condition& condition(CondId c) const { return conditions_.at(c); }
  const Event& event(EventId e) const { return events_.at(e); }
  std::span<const CondId> initial_conditions() const { return initial_; }

  /// Pairwise concurrency of two conditions.
  bool co(CondId a, CondId b) const;

  /// Appends an extension and its post-conditions. The box is taken as given.
  EventId add_event(Extension ext);

  /// Cut-off bookkeeping. Marks e and flags every later event depending on it.
  void mark_cutoff(EventId e, EventId witness);
  /// True when a condition was produced by a cut-off event or one beyond it.
  bool blocked(CondId c) const;

private:
  void add_condition(EventId parent, NodeId node, Value value);
  void ensure_co_capacity(std::size_t conditions);

  Prn prn_;
  State x0_;
  std::vector<Condition> conditions_;
  std::vector<Event> events_;
  std::vector<CondId> initial_;
  std::vector<std::vector<std::uint64_t>> co_; // symmetric bit matrix
  std::size_t co_words_ = 0;
};

/// All causal predecessors of e, including e, in increasing id order.
std::vector<EventId> local_configuration(const OccurrenceNet& net, EventId e);

/// Checks causal closure and conflict-freeness.
bool is_configuration(const OccurrenceNet& net, std::span<const EventId> events);
/// The cut (C0 + post) - pre of a configuration, one condition per node, by node id.
std::vector<CondId> cut(const OccurrenceNet& net, std::span<const EventId> events);
/// State encoded by the cut. Throws NetError for a malformed configuration.
State cut_state(const OccurrenceNet& net, std::span<const EventId> events);

/// Builds a candidate from a preset (ordered by node id) and a direction.
/// Returns nothing when the move leaves the domain or the box is empty.
std::optional<Extension> make_extension(const OccurrenceNet& net, const ConstraintEngine& engine,
                                        const ParamBox& base, std::vector<CondId> preset,
                                        NodeId node, Direction direction);

/// Box of a candidate by the inductive rule: intersect the boxes of the
/// events producing the preset (the base box for initial conditions), narrow
/// by the candidate's bound, then re-establish the constraints.
ParamBox inductive_box(const OccurrenceNet& net, const ConstraintEngine& engine,
                       const ParamBox& base, std::span<const CondId> preset,
                       const TransitionBound& bound, NodeId node);

/// Box of a configuration by folding the event bounds in id order.
ParamBox configuration_box(const OccurrenceNet& net, const ConstraintEngine& engine,
                           std::span<const EventId> events);

/// Candidates using at least one post-condition of e, or only initial
/// conditions when e is no_event. Conditions of blocked events are never
/// chosen besides the post-conditions of e itself.
std::vector<Extension> extensions_after(const OccurrenceNet& net, const ConstraintEngine& engine,
                                        const ParamBox& base, EventId e);

/// Every possible extension of the net: candidates over co-sets of
/// unblocked conditions that are not already events.
std::vector<Extension> possible_extensions(const OccurrenceNet& net, const ConstraintEngine& engine);

} // namespace prn
