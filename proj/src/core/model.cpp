#include "prn/model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "format.hpp"

namespace prn {

namespace {

// Keeps |Omega| addressable with dense per-coordinate vectors.
constexpr std::size_t max_param_count = std::size_t{1} << 26;

BigCount saturating_mul(BigCount acc, std::uint64_t factor) {
  if (acc.saturated) {
    return acc;
  }
  if (factor != 0 && acc.value > std::numeric_limits<std::uint64_t>::max() / factor) {
    return {std::numeric_limits<std::uint64_t>::max(), true};
  }
  return {acc.value * factor, false};
}

} // namespace

char direction_symbol(Direction d) { return d == Direction::Up ? '+' : '-'; }

std::string BigCount::to_string() const {
  return saturated ? ">" + std::to_string(value) : std::to_string(value);
}

// ---------------------------------------------------------------------------
// InfluenceGraph

InfluenceGraph::InfluenceGraph(std::size_t node_count, std::vector<std::string> names)
    : regulators_(node_count), names_(std::move(names)) {
  if (node_count == 0) {
    throw ModelError("an influence graph needs at least one node");
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < node_count; ++i) {
      names_.push_back(std::to_string(i + 1));
    }
  }
  if (names_.size() != node_count) {
    throw ModelError("node name count does not match node count");
  }
}

void InfluenceGraph::check_node(NodeId v) const {
  if (v >= regulators_.size()) {
    throw ModelError("invalid node id " + std::to_string(v + 1));
  }
}

void InfluenceGraph::add_influence(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  auto& regs = regulators_[v];
  auto it = std::lower_bound(regs.begin(), regs.end(), u);
  if (it == regs.end() || *it != u) {
    regs.insert(it, u);
  }
}

std::span<const NodeId> InfluenceGraph::regulators(NodeId v) const {
  check_node(v);
  return regulators_[v];
}

bool InfluenceGraph::has_influence(NodeId u, NodeId v) const {
  check_node(u);
  auto regs = regulators(v);
  return std::binary_search(regs.begin(), regs.end(), u);
}

std::size_t InfluenceGraph::out_degree(NodeId u) const {
  check_node(u);
  std::size_t n = 0;
  for (const auto& regs : regulators_) {
    n += std::binary_search(regs.begin(), regs.end(), u) ? 1 : 0;
  }
  return n;
}

std::size_t InfluenceGraph::influence_count() const {
  std::size_t n = 0;
  for (const auto& regs : regulators_) {
    n += regs.size();
  }
  return n;
}

const std::string& InfluenceGraph::name(NodeId v) const {
  check_node(v);
  return names_[v];
}

std::optional<NodeId> InfluenceGraph::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<NodeId>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// Transition

State Transition::target() const {
  State y = source;
  y.values.at(node) = static_cast<Value>(y.values.at(node) + sign(direction));
  return y;
}

// ---------------------------------------------------------------------------
// Prn

Prn::Prn(InfluenceGraph graph, std::vector<Value> max_values)
    : graph_(std::move(graph)), max_values_(std::move(max_values)) {
  const std::size_t n = graph_.node_count();
  if (max_values_.size() != n) {
    throw ModelError("max value vector length does not match node count");
  }
  nodes_.resize(n);
  std::size_t offset = 0;
  for (NodeId v = 0; v < n; ++v) {
    auto regs = graph_.regulators(v);
    auto& layout = nodes_[v];
    layout.offset = offset;
    layout.strides.assign(regs.size(), 1);
    std::size_t count = 1;
    // Last regulator varies fastest.
    for (std::size_t i = regs.size(); i-- > 0;) {
      layout.strides[i] = count;
      count *= static_cast<std::size_t>(max_values_[regs[i]]) + 1;
      if (count > max_param_count) {
        throw ModelError("node " + graph_.name(v) + " has too many regulator states");
      }
    }
    layout.context_count = count;
    offset += count;
    if (offset > max_param_count) {
      throw ModelError("parameter space too large");
    }
  }
  param_count_ = offset;
  coord_nodes_.resize(param_count_);
  for (NodeId v = 0; v < n; ++v) {
    std::fill_n(coord_nodes_.begin() + static_cast<std::ptrdiff_t>(nodes_[v].offset),
                nodes_[v].context_count, v);
  }
}

void Prn::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw ModelError("invalid node id " + std::to_string(v + 1));
  }
}

std::optional<std::size_t> Prn::regulator_position(NodeId v, NodeId u) const {
  auto regs = regulators(v);
  auto it = std::lower_bound(regs.begin(), regs.end(), u);
  if (it == regs.end() || *it != u) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - regs.begin());
}

ParamIndex Prn::param_index(std::size_t coord) const {
  NodeId v = coord_node(coord);
  return {v, coord - nodes_[v].offset, coord};
}

std::size_t Prn::context_index(NodeId v, std::span<const Value> omega) const {
  check_node(v);
  auto regs = regulators(v);
  if (omega.size() != regs.size()) {
    throw ModelError("regulator state of node " + name(v) + " has wrong length");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    if (omega[i] > max_values_[regs[i]]) {
      throw ModelError("regulator state of node " + name(v) + " out of domain");
    }
    index += omega[i] * nodes_[v].strides[i];
  }
  return index;
}

std::vector<Value> Prn::context_values(NodeId v, std::size_t context) const {
  check_node(v);
  auto regs = regulators(v);
  std::vector<Value> omega(regs.size());
  for (std::size_t i = 0; i < regs.size(); ++i) {
    omega[i] = context_component(v, context, i);
  }
  return omega;
}

Value Prn::context_component(NodeId v, std::size_t context, std::size_t reg_pos) const {
  const auto& layout = nodes_[v];
  NodeId u = graph_.regulators(v)[reg_pos];
  return static_cast<Value>((context / layout.strides[reg_pos]) % (max_values_[u] + 1u));
}

RegulatorState Prn::regulator_projection(NodeId v, const State& x) const {
  check_node(v);
  check_state(x);
  RegulatorState omega{v, {}};
  for (NodeId u : regulators(v)) {
    omega.values.push_back(x[u]);
  }
  return omega;
}

std::size_t Prn::param_coordinate(NodeId v, const RegulatorState& omega) const {
  if (omega.target != v) {
    throw ModelError("regulator state belongs to another node");
  }
  return nodes_.at(v).offset + context_index(v, omega.values);
}

std::size_t Prn::state_coordinate(NodeId v, const State& x) const {
  const auto& layout = nodes_[v];
  auto regs = graph_.regulators(v);
  std::size_t index = 0;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    index += x[regs[i]] * layout.strides[i];
  }
  return layout.offset + index;
}

std::vector<Transition> Prn::all_transitions(const State& x) const {
  check_state(x);
  std::vector<Transition> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (x[v] < max_values_[v]) {
      out.push_back({x, v, Direction::Up});
    }
    if (x[v] > 0) {
      out.push_back({x, v, Direction::Down});
    }
  }
  return out;
}

std::vector<Transition> Prn::enabled_transitions(const Parametrisation& p, const State& x) const {
  check_state(x);
  check_parametrisation(p);
  std::vector<Transition> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    Value target = p[state_coordinate(v, x)];
    if (target > x[v]) {
      out.push_back({x, v, Direction::Up});
    } else if (target < x[v]) {
      out.push_back({x, v, Direction::Down});
    }
  }
  return out;
}

BigCount Prn::parametrisation_count() const {
  BigCount count{1, false};
  for (std::size_t c = 0; c < param_count_; ++c) {
    count = saturating_mul(count, max_values_[coord_nodes_[c]] + 1u);
  }
  return count;
}

BigCount Prn::state_count() const {
  BigCount count{1, false};
  for (Value m : max_values_) {
    count = saturating_mul(count, m + 1u);
  }
  return count;
}

bool Prn::valid_state(const State& x) const {
  if (x.size() != node_count()) {
    return false;
  }
  for (NodeId v = 0; v < node_count(); ++v) {
    if (x[v] > max_values_[v]) {
      return false;
    }
  }
  return true;
}

bool Prn::valid_parametrisation(const Parametrisation& p) const {
  if (p.size() != param_count_) {
    return false;
  }
  for (std::size_t c = 0; c < param_count_; ++c) {
    if (p[c] > max_values_[coord_nodes_[c]]) {
      return false;
    }
  }
  return true;
}

void Prn::check_state(const State& x) const {
  if (!valid_state(x)) {
    throw ModelError("invalid state " + format_state(x));
  }
}

void Prn::check_parametrisation(const Parametrisation& p) const {
  if (!valid_parametrisation(p)) {
    throw ModelError("invalid parametrisation " + format_values(p.values));
  }
}

void Prn::check_transition(const Transition& t) const {
  check_state(t.source);
  check_node(t.node);
  int next = t.source[t.node] + sign(t.direction);
  if (next < 0 || next > max_values_[t.node]) {
    throw ModelError("transition leaves the domain of node " + name(t.node));
  }
}

Parametrisation Prn::lowest_parametrisation() const {
  return {std::vector<Value>(param_count_, 0)};
}

Parametrisation Prn::highest_parametrisation() const {
  Parametrisation p{std::vector<Value>(param_count_)};
  for (std::size_t c = 0; c < param_count_; ++c) {
    p.values[c] = max_values_[coord_nodes_[c]];
  }
  return p;
}

std::string format_state(const State& x) { return format_digits(x.values); }

std::string format_transition(const Prn& prn, const Transition& t) {
  std::ostringstream out;
  out << format_state(t.source) << " -(" << prn.name(t.node) << direction_symbol(t.direction)
      << ")-> " << format_state(t.target());
  return out.str();
}

} // namespace prn
