#pragma once

// Complete finite prefix construction: Parikh vectors, Foata normal forms,
// the adequate order on configurations, cut-off detection and the main loop.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "prn/constraints.hpp"
#include "prn/unfolding.hpp"

namespace prn {

/// Event counts per parameter coordinate, stored as the sorted word of
/// coordinates (each coordinate repeated by its count).
struct ParikhVector {
  std::vector<std::uint32_t> word;

  std::size_t total() const { return word.size(); }
  std::uint32_t count(std::size_t coord) const;
  std::vector<std::uint32_t> dense(std::size_t param_count) const;
  bool operator==(const ParikhVector&) const = default;
};

/// One Parikh vector per causal layer.
struct FoataForm {
  std::vector<ParikhVector> layers;
  bool operator==(const FoataForm&) const = default;
};

ParikhVector parikh(const OccurrenceNet& net, std::span<const EventId> config);
FoataForm foata(const OccurrenceNet& net, std::span<const EventId> config);

/// Lexicographic comparison of the sorted coordinate words; a proper prefix
/// comes first. For equal totals this means: at the first coordinate where
/// the counts differ, the vector with more occurrences is smaller.
std::strong_ordering compare_parikh(const ParikhVector& a, const ParikhVector& b);
/// Layer by layer with compare_parikh, shorter forms first on a common prefix.
std::strong_ordering compare_foata(const FoataForm& a, const FoataForm& b);

/// Size, then Parikh vector, then Foata form.
std::strong_ordering adequate_compare(const OccurrenceNet& net, std::span<const EventId> a,
                                      std::span<const EventId> b);

/// Sort key of a candidate event: the adequate-order data of its local
/// configuration, refined by its sorted preset and (v, s) so that distinct
/// candidates never tie.
struct OrderKey {
  std::size_t size = 0;
  ParikhVector parikh;
  FoataForm foata;
  std::vector<CondId> preset;
  NodeId node = 0;
  Direction direction = Direction::Up;
};

OrderKey order_key(const OccurrenceNet& net, const Extension& ext);
std::strong_ordering compare_keys(const OrderKey& a, const OrderKey& b);

/// Smallest-id event other than e reaching the same state with a box that
/// includes e's box.
std::optional<EventId> is_cutoff(const OccurrenceNet& net, EventId e);

struct CfpLimits {
  std::optional<std::size_t> max_events;
  std::optional<double> max_seconds;
};

enum class CfpStatus { Complete, EventLimit, TimeLimit };

struct CfpStats {
  std::size_t events = 0;              // non-cut-off events
  std::size_t events_with_cutoffs = 0; // all events
  std::size_t conditions = 0;
};

struct CfpResult {
  OccurrenceNet net;
  CfpStatus status = CfpStatus::Complete;
  double runtime_ms = 0;

  CfpStats stats() const;
};

/// Builds the prefix from x0, inserting candidates in adequate order.
CfpResult build_cfp(const Prn& prn, const ConstraintSet& r, const State& x0,
                    const CfpLimits& limits = {});

/// Raised when a bounded computation runs out of budget.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_configuration_cap = 2'000'000;

/// States of all configurations of the prefix (cut-off events included) whose
/// abstraction is not empty. Explores cuts breadth-first; throws
/// ResourceLimit beyond `max_configurations` distinct cuts.
std::set<State> prefix_reachable_states(const OccurrenceNet& net, const ConstraintSet& r,
                                        std::size_t max_configurations = default_configuration_cap);

} // namespace prn
