#pragma once

// Influence graphs, parametric regulatory networks and their concrete
// asynchronous transition relation.
//
// Node ids are 0-based inside the library. Regulator lists are always kept in
// increasing node-id order; the parameter coordinates <v, omega> are enumerated
// node-major, then lexicographically on omega with the first regulator most
// significant.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prn {

using NodeId = std::uint32_t;
using Value = std::uint8_t;

/// Largest admissible per-node maximum value.
inline constexpr unsigned max_domain_value = 255;

/// Raised for malformed models, out-of-domain vectors and bad node ids.
class ModelError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InfluenceGraph {
public:
  InfluenceGraph() = default;
  explicit InfluenceGraph(std::size_t node_count, std::vector<std::string> names = {});

  /// Adds u -> v. Duplicate influences are ignored.
  void add_influence(NodeId u, NodeId v);

  std::size_t node_count() const { return regulators_.size(); }
  std::span<const NodeId> regulators(NodeId v) const;
  bool has_influence(NodeId u, NodeId v) const;
  std::size_t out_degree(NodeId u) const;
  std::size_t influence_count() const;

  const std::string& name(NodeId v) const;
  /// Looks a node up by its label.
  std::optional<NodeId> find(std::string_view name) const;

private:
  void check_node(NodeId v) const;

  std::vector<std::vector<NodeId>> regulators_;
  std::vector<std::string> names_;
};

/// A vector of node values, one per node.
struct State {
  std::vector<Value> values;

  Value operator[](NodeId v) const { return values[v]; }
  std::size_t size() const { return values.size(); }
  auto operator<=>(const State&) const = default;
};

/// The projection of a state onto the regulators of `target`, in increasing
/// regulator-id order.
struct RegulatorState {
  NodeId target = 0;
  std::vector<Value> values;

  auto operator<=>(const RegulatorState&) const = default;
};

/// One value per parameter coordinate, in the canonical coordinate order.
struct Parametrisation {
  std::vector<Value> values;

  Value operator[](std::size_t coord) const { return values[coord]; }
  std::size_t size() const { return values.size(); }
  auto operator<=>(const Parametrisation&) const = default;
};

/// Pair <v, omega> together with its flat coordinate.
struct ParamIndex {
  NodeId node = 0;
  std::size_t context = 0; // index of omega within Omega_v
  std::size_t coord = 0;   // flat coordinate within Omega
};

enum class Direction : std::int8_t { Down = -1, Up = +1 };

inline int sign(Direction d) { return static_cast<int>(d); }
char direction_symbol(Direction d);

/// x ->(v, s) x[v <- x_v + s]. The target state is always derived.
struct Transition {
  State source;
  NodeId node = 0;
  Direction direction = Direction::Up;

  State target() const;
  auto operator<=>(const Transition&) const = default;
};

/// Saturating parametrisation/box cardinality.
struct BigCount {
  std::uint64_t value = 0;
  bool saturated = false;

  std::string to_string() const;
  bool operator==(const BigCount&) const = default;
};

class Prn {
public:
  Prn() = default;
  Prn(InfluenceGraph graph, std::vector<Value> max_values);

  const InfluenceGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  Value max_value(NodeId v) const { return max_values_.at(v); }
  const std::vector<Value>& max_values() const { return max_values_; }
  std::span<const NodeId> regulators(NodeId v) const { return graph_.regulators(v); }
  const std::string& name(NodeId v) const { return graph_.name(v); }

  /// |Omega|.
  std::size_t param_count() const { return param_count_; }
  /// |Omega_v|.
  std::size_t context_count(NodeId v) const { return nodes_.at(v).context_count; }
  /// Flat coordinate of <v, first context>.
  std::size_t param_offset(NodeId v) const { return nodes_.at(v).offset; }
  /// Index distance between omega and omega[u <- omega_u + 1], where u is the
  /// regulator at `reg_pos` in regulators(v).
  std::size_t context_stride(NodeId v, std::size_t reg_pos) const {
    return nodes_.at(v).strides.at(reg_pos);
  }
  /// Position of u in regulators(v), if u regulates v.
  std::optional<std::size_t> regulator_position(NodeId v, NodeId u) const;

  /// Node owning a flat coordinate.
  NodeId coord_node(std::size_t coord) const { return coord_nodes_.at(coord); }
  ParamIndex param_index(std::size_t coord) const;

  /// Local context index of omega within Omega_v.
  std::size_t context_index(NodeId v, std::span<const Value> omega) const;
  /// Inverse of context_index.
  std::vector<Value> context_values(NodeId v, std::size_t context) const;
  /// Value of the regulator at `reg_pos` within a local context index.
  Value context_component(NodeId v, std::size_t context, std::size_t reg_pos) const;

  /// Regulator projection omega_v(x).
  RegulatorState regulator_projection(NodeId v, const State& x) const;
  /// Flat coordinate of <v, omega>.
  std::size_t param_coordinate(NodeId v, const RegulatorState& omega) const;
  /// Flat coordinate of <v, omega_v(x)> without materialising omega.
  std::size_t state_coordinate(NodeId v, const State& x) const;

  /// Every transition of Delta(G_m) leaving x.
  std::vector<Transition> all_transitions(const State& x) const;
  /// Transitions of Delta(G_m, P) leaving x.
  std::vector<Transition> enabled_transitions(const Parametrisation& p, const State& x) const;

  /// |P(G_m)|.
  BigCount parametrisation_count() const;
  /// Number of states.
  BigCount state_count() const;

  bool valid_state(const State& x) const;
  bool valid_parametrisation(const Parametrisation& p) const;
  void check_state(const State& x) const;
  void check_parametrisation(const Parametrisation& p) const;
  void check_transition(const Transition& t) const;
  void check_node(NodeId v) const;

  Parametrisation lowest_parametrisation() const;
  Parametrisation highest_parametrisation() const;

private:
  struct NodeLayout {
    std::size_t offset = 0;
    std::size_t context_count = 1;
    std::vector<std::size_t> strides;
  };

  InfluenceGraph graph_;
  std::vector<Value> max_values_;
  std::vector<NodeLayout> nodes_;
  std::vector<NodeId> coord_nodes_;
  std::size_t param_count_ = 0;
};

/// Renders a state as concatenated digits, e.g. "110".
std::string format_state(const State& x);
/// Renders a transition as "110 -(c+)-> 111" using node names.
std::string format_transition(const Prn& prn, const Transition& t);

} // namespace prn
