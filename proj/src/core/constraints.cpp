#include "prn/constraints.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace prn {

namespace {

int kind_sign(InfluenceKind k) {
  switch (k) {
  case InfluenceKind::Positive:
    return +1;
  case InfluenceKind::Negative:
    return -1;
  default:
    return 0;
  }
}

BigCount saturating_pow(std::uint64_t base, unsigned exp) {
  BigCount r{1, false};
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r.value > std::numeric_limits<std::uint64_t>::max() / base) {
      return {std::numeric_limits<std::uint64_t>::max(), true};
    }
    r.value *= base;
  }
  return r;
}

} // namespace

const char* kind_symbol(InfluenceKind k) {
  switch (k) {
  case InfluenceKind::Positive:
    return "+";
  case InfluenceKind::Negative:
    return "-";
  default:
    return "o";
  }
}

int InfluenceConstraint::sign() const { return kind_sign(kind); }

bool constraint_less(const InfluenceConstraint& a, const InfluenceConstraint& b) {
  if (a.target != b.target) {
    return a.target < b.target;
  }
  if (a.regulator != b.regulator) {
    return a.regulator < b.regulator;
  }
  return a.kind < b.kind;
}

// ---------------------------------------------------------------------------
// ConstraintSet

void ConstraintSet::add(InfluenceConstraint c) {
  auto it = std::lower_bound(constraints_.begin(), constraints_.end(), c, constraint_less);
  if (it == constraints_.end() || !(*it == c)) {
    constraints_.insert(it, c);
  }
}

bool ConstraintSet::contains(const InfluenceConstraint& c) const {
  return std::binary_search(constraints_.begin(), constraints_.end(), c, constraint_less);
}

int ConstraintSet::sign(NodeId u, NodeId v) const {
  if (contains({u, v, InfluenceKind::Positive})) {
    return +1;
  }
  if (contains({u, v, InfluenceKind::Negative})) {
    return -1;
  }
  return 0;
}

void ConstraintSet::validate(const Prn& prn) const {
  for (const auto& c : constraints_) {
    if (c.regulator >= prn.node_count() || c.target >= prn.node_count()) {
      throw ModelError("constraint refers to an unknown node");
    }
    if (!prn.graph().has_influence(c.regulator, c.target)) {
      throw ModelError("constraint " + format_constraint(prn, c) + " is not an influence");
    }
    if (c.kind == InfluenceKind::Positive &&
        contains({c.regulator, c.target, InfluenceKind::Negative})) {
      throw ModelError("influence " + prn.name(c.regulator) + " -> " + prn.name(c.target) +
                       " is both positive and negative");
    }
  }
}

std::string format_constraint(const Prn& prn, const InfluenceConstraint& c) {
  return "(" + prn.name(c.regulator) + "," + prn.name(c.target) + "," + kind_symbol(c.kind) + ")";
}

std::string format_constraints(const Prn& prn, const ConstraintSet& r) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& c : r.constraints()) {
    out << (first ? "" : ",") << format_constraint(prn, c);
    first = false;
  }
  out << "} minmax:" << (r.minmax() ? "on" : "off");
  return out.str();
}

MonoCmp mono_compare(const Prn& prn, const ConstraintSet& r, NodeId v,
                     std::span<const Value> omega, std::span<const Value> other) {
  std::size_t a = prn.context_index(v, omega);
  std::size_t b = prn.context_index(v, other);
  return ConstraintEngine(prn, r).compare(v, a, b);
}

std::vector<NodeId> minmax_skipped_nodes(const Prn& prn, const ConstraintSet& r) {
  std::vector<NodeId> out;
  if (!r.minmax()) {
    return out;
  }
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    auto regs = prn.regulators(v);
    bool skip = regs.empty();
    for (NodeId u : regs) {
      skip = skip || r.sign(u, v) == 0;
    }
    if (skip) {
      out.push_back(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ConstraintEngine

ConstraintEngine::ConstraintEngine(const Prn& prn, ConstraintSet r)
    : prn_(&prn), r_(std::move(r)) {
  r_.validate(prn);
  nodes_.resize(prn.node_count());
  round_cap_ = {0, false};
  auto all = r_.constraints();
  std::size_t i = 0;
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    auto& info = nodes_[v];
    for (NodeId u : prn.regulators(v)) {
      info.signs.push_back(r_.sign(u, v));
    }
    info.first = i;
    while (i < all.size() && all[i].target == v) {
      ++i;
    }
    info.last = i;

    BigCount term = saturating_pow(prn.context_count(v), prn.max_value(v) + 1u);
    if (term.saturated ||
        round_cap_.value > std::numeric_limits<std::uint64_t>::max() - term.value) {
      round_cap_ = {std::numeric_limits<std::uint64_t>::max(), true};
    } else if (!round_cap_.saturated) {
      round_cap_.value += term.value;
    }
  }
}

MonoCmp ConstraintEngine::compare(NodeId v, std::size_t context, std::size_t other) const {
  if (context == other) {
    return MonoCmp::Equal;
  }
  const auto& signs = nodes_[v].signs;
  bool less = false;
  bool greater = false;
  for (std::size_t pos = 0; pos < signs.size(); ++pos) {
    int a = prn_->context_component(v, context, pos);
    int b = prn_->context_component(v, other, pos);
    if (a == b) {
      continue;
    }
    if (signs[pos] == 0) {
      return MonoCmp::Incomparable;
    }
    if ((b - a) * signs[pos] > 0) {
      less = true;
    } else {
      greater = true;
    }
    if (less && greater) {
      return MonoCmp::Incomparable;
    }
  }
  return less ? MonoCmp::Less : MonoCmp::Greater;
}

bool ConstraintEngine::narrow_monotonic(ParamBox& box, const InfluenceConstraint& c) const {
  if (box.is_empty() || !c.is_sign()) {
    return false;
  }
  const NodeId v = c.target;
  const std::size_t pos = *prn_->regulator_position(v, c.regulator);
  const std::size_t stride = prn_->context_stride(v, pos);
  const std::size_t offset = prn_->param_offset(v);
  const std::size_t n = prn_->context_count(v);
  const Value mu = prn_->max_value(c.regulator);
  bool changed = false;

  // L[w] >= L[w[u <- w_u - s]]: propagate away from the source neighbour.
  // U[w] <= U[w[u <- w_u + s]]: propagate from the other side.
  auto sweep_lower = [&](bool ascending) {
    for (std::size_t i = 0; i < n && !box.is_empty(); ++i) {
      std::size_t k = ascending ? i : n - 1 - i;
      Value x = prn_->context_component(v, k, pos);
      bool has_src = ascending ? x > 0 : x < mu;
      if (has_src) {
        std::size_t src = ascending ? k - stride : k + stride;
        changed |= box.raise_lower(offset + k, box.lower()[offset + src]);
      }
    }
  };
  auto sweep_upper = [&](bool ascending) {
    for (std::size_t i = 0; i < n && !box.is_empty(); ++i) {
      std::size_t k = ascending ? i : n - 1 - i;
      Value x = prn_->context_component(v, k, pos);
      bool has_src = ascending ? x > 0 : x < mu;
      if (has_src) {
        std::size_t src = ascending ? k - stride : k + stride;
        changed |= box.lower_upper(offset + k, box.upper()[offset + src]);
      }
    }
  };
  bool positive = c.kind == InfluenceKind::Positive;
  sweep_lower(positive);
  sweep_upper(!positive);
  return changed;
}

bool ConstraintEngine::narrow_observable(ParamBox& box, const InfluenceConstraint& c) const {
  if (box.is_empty() || c.kind != InfluenceKind::Observable) {
    return false;
  }
  const NodeId v = c.target;
  const std::size_t pos = *prn_->regulator_position(v, c.regulator);
  const std::size_t stride = prn_->context_stride(v, pos);
  const std::size_t offset = prn_->param_offset(v);
  const std::size_t n = prn_->context_count(v);
  const Value mu = prn_->max_value(c.regulator);
  const auto& lo = box.lower();
  const auto& up = box.upper();

  std::vector<std::size_t> a;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t base = offset + k - prn_->context_component(v, k, pos) * stride;
    for (Value x = 1; x <= mu; ++x) {
      std::size_t hi = base + x * stride;
      std::size_t prev = hi - stride;
      if (lo[hi] < up[prev] || up[hi] > lo[prev]) {
        a.push_back(k);
        break;
      }
    }
  }
  if (a.empty()) {
    box.clear();
    return true;
  }

  bool same_lower = true;
  bool same_upper = true;
  for (std::size_t k : a) {
    same_lower = same_lower && lo[offset + k] == lo[offset + a.front()];
    same_upper = same_upper && up[offset + k] == up[offset + a.front()];
  }
  // Extremal elements of A (w.r.t. the monotonicity order) whose bound can move.
  auto extremal = [&](bool maximal) {
    std::vector<std::size_t> out;
    for (std::size_t k : a) {
      if (lo[offset + k] >= up[offset + k]) {
        continue;
      }
      bool dominated = false;
      for (std::size_t other : a) {
        MonoCmp cmp = compare(v, k, other);
        if (cmp == (maximal ? MonoCmp::Less : MonoCmp::Greater)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        out.push_back(k);
      }
    }
    return out;
  };
  std::vector<std::size_t> b_max = same_lower ? extremal(true) : std::vector<std::size_t>{};
  std::vector<std::size_t> b_min = same_upper ? extremal(false) : std::vector<std::size_t>{};

  bool changed = false;
  std::optional<std::pair<std::size_t, Value>> raise;
  std::optional<std::pair<std::size_t, Value>> drop;
  if (b_max.size() == 1) {
    raise = {{offset + b_max[0], static_cast<Value>(lo[offset + b_max[0]] + 1)}};
  }
  if (b_min.size() == 1) {
    drop = {{offset + b_min[0], static_cast<Value>(up[offset + b_min[0]] - 1)}};
  }
  if (raise) {
    changed |= box.raise_lower(raise->first, raise->second);
  }
  if (drop) {
    changed |= box.lower_upper(drop->first, drop->second);
  }
  return changed;
}

bool ConstraintEngine::narrow_minmax(ParamBox& box, std::optional<NodeId> only) const {
  if (!r_.minmax() || box.is_empty()) {
    return false;
  }
  bool changed = false;
  for (NodeId v = 0; v < prn_->node_count() && !box.is_empty(); ++v) {
    if (only && *only != v) {
      continue;
    }
    const auto& signs = nodes_[v].signs;
    if (signs.empty() || std::count(signs.begin(), signs.end(), 0) > 0) {
      continue;
    }
    auto regs = prn_->regulators(v);
    std::vector<Value> high(regs.size());
    std::vector<Value> low(regs.size());
    for (std::size_t pos = 0; pos < regs.size(); ++pos) {
      Value m = prn_->max_value(regs[pos]);
      high[pos] = signs[pos] > 0 ? m : 0;
      low[pos] = signs[pos] > 0 ? 0 : m;
    }
    std::size_t offset = prn_->param_offset(v);
    changed |= box.raise_lower(offset + prn_->context_index(v, high), prn_->max_value(v));
    changed |= box.lower_upper(offset + prn_->context_index(v, low), 0);
  }
  return changed;
}

bool ConstraintEngine::apply(ParamBox& box, const InfluenceConstraint& c) const {
  return c.is_sign() ? narrow_monotonic(box, c) : narrow_observable(box, c);
}

bool ConstraintEngine::narrow_all(ParamBox& box, std::optional<NodeId> only) const {
  bool changed = narrow_minmax(box, only);
  auto all = r_.constraints();
  std::size_t first = only ? nodes_.at(*only).first : 0;
  std::size_t last = only ? nodes_.at(*only).last : all.size();
  std::uint64_t rounds = 0;
  bool round_changed = true;
  while (round_changed && !box.is_empty()) {
    if (!round_cap_.saturated && rounds > round_cap_.value) {
      throw NarrowingError("constraint narrowing did not reach a fixpoint");
    }
    ++rounds;
    round_changed = false;
    for (std::size_t i = first; i < last && !box.is_empty(); ++i) {
      round_changed |= apply(box, all[i]);
    }
    changed |= round_changed;
  }
  return changed;
}

ParamBox ConstraintEngine::base_box() const {
  ParamBox box = full_box(*prn_);
  narrow_all(box);
  return box;
}

void ConstraintEngine::add_transition(ParamBox& box, const TransitionBound& bound, NodeId v) const {
  apply_bound(box, bound);
  narrow_all(box, v);
  narrow_all(box);
}

ParamBox ConstraintEngine::p_abs_R(std::span<const Transition> transitions) const {
  ParamBox box = base_box();
  for (const auto& t : transitions) {
    add_transition(box, transition_bound(*prn_, t), t.node);
  }
  return box;
}

ParamBox narrow_monotonic(const Prn& prn, ParamBox box, const InfluenceConstraint& c) {
  ConstraintSet r;
  r.add(c);
  ConstraintEngine(prn, r).narrow_monotonic(box, c);
  return box;
}

ParamBox narrow_observable(const Prn& prn, const ConstraintSet& r, ParamBox box,
                           const InfluenceConstraint& c) {
  ConstraintEngine(prn, r).narrow_observable(box, c);
  return box;
}

ParamBox narrow_minmax(const Prn& prn, const ConstraintSet& r, ParamBox box) {
  ConstraintEngine(prn, r).narrow_minmax(box);
  return box;
}

ParamBox narrow_all(const Prn& prn, const ConstraintSet& r, ParamBox box,
                    std::optional<NodeId> only) {
  ConstraintEngine(prn, r).narrow_all(box, only);
  return box;
}

ParamBox p_abs_R(const Prn& prn, const ConstraintSet& r, std::span<const Transition> transitions) {
  return ConstraintEngine(prn, r).p_abs_R(transitions);
}

} // namespace prn
