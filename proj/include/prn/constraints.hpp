#pragma once

// Influence constraints (sign and observability, optional Min-Max), the
// monotonicity order on regulator contexts, and the narrowing operators that
// enforce them on parameter boxes.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prn/model.hpp"
#include "prn/plattice.hpp"

namespace prn {

enum class InfluenceKind : std::int8_t { Positive = 0, Negative = 1, Observable = 2 };

/// "+", "-" or "o".
const char* kind_symbol(InfluenceKind k);

struct InfluenceConstraint {
  NodeId regulator = 0;
  NodeId target = 0;
  InfluenceKind kind = InfluenceKind::Positive;

  bool is_sign() const { return kind != InfluenceKind::Observable; }
  /// +1, -1, or 0 for observability.
  int sign() const;
  bool operator==(const InfluenceConstraint&) const = default;
};

/// Canonical order: target, then regulator, then kind.
bool constraint_less(const InfluenceConstraint& a, const InfluenceConstraint& b);

class ConstraintSet {
public:
  ConstraintSet() = default;

  /// Inserts in canonical order; duplicates are ignored. Does not check the
  /// constraint against a network, see validate().
  void add(InfluenceConstraint c);
  void add(NodeId regulator, NodeId target, InfluenceKind kind) { add({regulator, target, kind}); }

  void set_minmax(bool on) { minmax_ = on; }
  bool minmax() const { return minmax_; }

  std::span<const InfluenceConstraint> constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty() && !minmax_; }
  bool contains(const InfluenceConstraint& c) const;
  /// +1 / -1 if (u, v) carries a sign constraint, else 0.
  int sign(NodeId u, NodeId v) const;

  /// Throws ModelError unless every constraint is an influence of the network
  /// and no influence is constrained both positively and negatively.
  void validate(const Prn& prn) const;

  bool operator==(const ConstraintSet&) const = default;

private:
  std::vector<InfluenceConstraint> constraints_;
  bool minmax_ = false;
};

/// "(a,c,+)" using node names.
std::string format_constraint(const Prn& prn, const InfluenceConstraint& c);
/// "{(a,c,+),(b,b,o)} minmax:off"
std::string format_constraints(const Prn& prn, const ConstraintSet& r);

enum class MonoCmp { Less, Equal, Greater, Incomparable };

/// Compares two regulator contexts of v under the monotonicity order
/// induced by the sign constraints of R.
MonoCmp mono_compare(const Prn& prn, const ConstraintSet& r, NodeId v,
                     std::span<const Value> omega, std::span<const Value> other);

/// Nodes skipped by the Min-Max rule because some regulator carries no sign,
/// or because they have no regulators at all. Empty unless minmax is on.
std::vector<NodeId> minmax_skipped_nodes(const Prn& prn, const ConstraintSet& r);

/// Raised when the constraint fixpoint does not stabilise within its bound.
class NarrowingError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Constraint narrowing compiled against one network. Cheap to query
/// repeatedly; holds its own copy of the constraint set but refers to `prn`.
class ConstraintEngine {
public:
  ConstraintEngine(const Prn& prn, ConstraintSet r);

  const Prn& prn() const { return *prn_; }
  const ConstraintSet& constraints() const { return r_; }

  MonoCmp compare(NodeId v, std::size_t context, std::size_t other) const;

  /// Each returns true when the box changed (becoming empty counts).
  bool narrow_monotonic(ParamBox& box, const InfluenceConstraint& c) const;
  bool narrow_observable(ParamBox& box, const InfluenceConstraint& c) const;
  bool narrow_minmax(ParamBox& box, std::optional<NodeId> only = std::nullopt) const;
  /// Fixpoint of all constraints, optionally restricted to those targeting one node.
  bool narrow_all(ParamBox& box, std::optional<NodeId> only = std::nullopt) const;

  /// Constrained abstraction of the empty transition set.
  ParamBox base_box() const;
  /// One inductive step: transition bound on node v, then the filtered
  /// fixpoint for v, then a full fixpoint pass.
  void add_transition(ParamBox& box, const TransitionBound& bound, NodeId v) const;
  ParamBox p_abs_R(std::span<const Transition> transitions) const;

private:
  struct NodeInfo {
    std::vector<int> signs;               // per regulator position
    std::size_t first = 0, last = 0;      // constraint index range targeting the node
  };

  bool apply(ParamBox& box, const InfluenceConstraint& c) const;

  const Prn* prn_;
  ConstraintSet r_;
  std::vector<NodeInfo> nodes_;
  BigCount round_cap_;
};

// Convenience wrappers over a temporary engine.
ParamBox narrow_monotonic(const Prn& prn, ParamBox box, const InfluenceConstraint& c);
ParamBox narrow_observable(const Prn& prn, const ConstraintSet& r, ParamBox box,
                           const InfluenceConstraint& c);
ParamBox narrow_minmax(const Prn& prn, const ConstraintSet& r, ParamBox box);
ParamBox narrow_all(const Prn& prn, const ConstraintSet& r, ParamBox box,
                    std::optional<NodeId> only = std::nullopt);
ParamBox p_abs_R(const Prn& prn, const ConstraintSet& r, std::span<const Transition> transitions);

} // namespace prn
