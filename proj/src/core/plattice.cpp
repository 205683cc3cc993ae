#include "prn/plattice.hpp"

#include <algorithm>
#include <limits>

#include "format.hpp"

namespace prn {

namespace {

bool dominated(std::span<const Value> a, std::span<const Value> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      return false;
    }
  }
  return true;
}

} // namespace

ParamBox::ParamBox(std::vector<Value> lower, std::vector<Value> upper) {
  if (lower.size() != upper.size()) {
    throw ModelError("box bounds have different lengths");
  }
  if (dominated(lower, upper)) {
    empty_ = false;
    lower_ = std::move(lower);
    upper_ = std::move(upper);
  }
}

bool ParamBox::raise_lower(std::size_t coord, Value value) {
  if (empty_ || lower_[coord] >= value) {
    return false;
  }
  if (value > upper_[coord]) {
    clear();
  } else {
    lower_[coord] = value;
  }
  return true;
}

bool ParamBox::lower_upper(std::size_t coord, Value value) {
  if (empty_ || upper_[coord] <= value) {
    return false;
  }
  if (value < lower_[coord]) {
    clear();
  } else {
    upper_[coord] = value;
  }
  return true;
}

void ParamBox::clear() {
  empty_ = true;
  lower_.clear();
  upper_.clear();
}

bool ParamBox::operator==(const ParamBox& other) const {
  if (empty_ || other.empty_) {
    return empty_ == other.empty_;
  }
  return lower_ == other.lower_ && upper_ == other.upper_;
}

TransitionBound transition_bound(std::size_t coord, Value from, Direction d) {
  if (d == Direction::Up) {
    return {coord, true, static_cast<Value>(from + 1)};
  }
  return {coord, false, static_cast<Value>(from - 1)};
}

TransitionBound transition_bound(const Prn& prn, const Transition& t) {
  prn.check_transition(t);
  return transition_bound(prn.state_coordinate(t.node, t.source), t.source[t.node], t.direction);
}

ParamBox full_box(const Prn& prn) {
  return {prn.lowest_parametrisation().values, prn.highest_parametrisation().values};
}

bool apply_bound(ParamBox& box, const TransitionBound& bound) {
  return bound.is_lower ? box.raise_lower(bound.coord, bound.value)
                        : box.lower_upper(bound.coord, bound.value);
}

ParamBox narrow_transition(const Prn& prn, ParamBox box, const Transition& t) {
  apply_bound(box, transition_bound(prn, t));
  return box;
}

ParamBox intersect(const ParamBox& a, const ParamBox& b) {
  if (a.is_empty() || b.is_empty()) {
    return ParamBox::empty();
  }
  if (a.dimension() != b.dimension()) {
    throw ModelError("intersecting boxes of different dimensions");
  }
  std::vector<Value> lower(a.dimension());
  std::vector<Value> upper(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    lower[i] = std::max(a.lower()[i], b.lower()[i]);
    upper[i] = std::min(a.upper()[i], b.upper()[i]);
  }
  return {std::move(lower), std::move(upper)};
}

bool contains(const ParamBox& box, const Parametrisation& p) {
  if (box.is_empty() || p.size() != box.dimension()) {
    return false;
  }
  return dominated(box.lower(), p.values) && dominated(p.values, box.upper());
}

bool box_is_subset(const ParamBox& a, const ParamBox& b) {
  if (a.is_empty()) {
    return true;
  }
  if (b.is_empty() || a.dimension() != b.dimension()) {
    return false;
  }
  return dominated(b.lower(), a.lower()) && dominated(a.upper(), b.upper());
}

BigCount box_size(const ParamBox& box) {
  if (box.is_empty()) {
    return {0, false};
  }
  BigCount count{1, false};
  for (std::size_t i = 0; i < box.dimension() && !count.saturated; ++i) {
    std::uint64_t width = static_cast<std::uint64_t>(box.upper()[i] - box.lower()[i]) + 1;
    if (count.value > std::numeric_limits<std::uint64_t>::max() / width) {
      count = {std::numeric_limits<std::uint64_t>::max(), true};
    } else {
      count.value *= width;
    }
  }
  return count;
}

ParamBox p_abs(const Prn& prn, std::span<const Transition> transitions) {
  ParamBox box = full_box(prn);
  for (const auto& t : transitions) {
    apply_bound(box, transition_bound(prn, t));
  }
  return box;
}

std::string format_box(const ParamBox& box) {
  if (box.is_empty()) {
    return "∅";
  }
  return "(" + format_values(box.lower()) + "," + format_values(box.upper()) + ")";
}

} // namespace prn
