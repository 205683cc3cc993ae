#pragma once

// Convex sublattices of the parametrisation lattice, represented by their
// bounds (L, U), and the narrowing of such a box by transitions.

#include <span>
#include <string>
#include <vector>

#include "prn/model.hpp"

namespace prn {

/// Either the empty lattice or an interval [lower, upper] with lower <= upper
/// componentwise. Incomparable bounds are never stored: they collapse to the
/// canonical empty box.
class ParamBox {
public:
  /// The empty lattice.
  ParamBox() = default;
  /// Builds (lower, upper), canonicalising to empty when !(lower <= upper).
  ParamBox(std::vector<Value> lower, std::vector<Value> upper);

  static ParamBox empty() { return {}; }

  bool is_empty() const { return empty_; }
  explicit operator bool() const { return !empty_; }

  /// Bounds; only meaningful for non-empty boxes.
  const std::vector<Value>& lower() const { return lower_; }
  const std::vector<Value>& upper() const { return upper_; }
  std::size_t dimension() const { return lower_.size(); }

  /// Raises lower[coord] to at least `value`. Returns true when the box changed.
  bool raise_lower(std::size_t coord, Value value);
  /// Lowers upper[coord] to at most `value`. Returns true when the box changed.
  bool lower_upper(std::size_t coord, Value value);
  /// Marks the box empty.
  void clear();

  bool operator==(const ParamBox& other) const;

private:
  bool empty_ = true;
  std::vector<Value> lower_;
  std::vector<Value> upper_;
};

/// The bound a single transition imposes on one parameter coordinate:
/// P[coord] >= value (lower) or P[coord] <= value (upper).
struct TransitionBound {
  std::size_t coord = 0;
  bool is_lower = true;
  Value value = 0;
};

/// The bound imposed by x ->(v,s): coordinate <v, omega_v(x)> and x_v + s.
TransitionBound transition_bound(const Prn& prn, const Transition& t);
/// Same bound from a regulator context, the node's current value and a direction.
TransitionBound transition_bound(std::size_t coord, Value from, Direction d);

/// (all zeros, all maxima).
ParamBox full_box(const Prn& prn);
/// Narrowing by one transition; empty stays empty.
ParamBox narrow_transition(const Prn& prn, ParamBox box, const Transition& t);
/// In-place narrowing by a precomputed bound. Returns true if the box changed.
bool apply_bound(ParamBox& box, const TransitionBound& bound);
/// (max of lowers, min of uppers); empty absorbs.
ParamBox intersect(const ParamBox& a, const ParamBox& b);
bool contains(const ParamBox& box, const Parametrisation& p);
/// a is included in b. The empty box is included in every box.
bool box_is_subset(const ParamBox& a, const ParamBox& b);
/// Number of parametrisations in the box (saturating).
BigCount box_size(const ParamBox& box);
/// Fold of narrow_transition over `transitions`, starting from the full box.
ParamBox p_abs(const Prn& prn, std::span<const Transition> transitions);

/// "(⟨00000000100⟩,⟨22210111111⟩)" or "∅".
std::string format_box(const ParamBox& box);

} // namespace prn
