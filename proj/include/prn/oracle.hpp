#pragma once

// Brute-force reference semantics for small networks: explicit enumeration of
// parametrisations, concrete parameter sets, reachability per parametrisation
// and checkers comparing the abstract operators against them.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prn/constraints.hpp"
#include "prn/model.hpp"
#include "prn/plattice.hpp"

namespace prn::oracle {

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

/// Raised when an enumeration would exceed its parametrisation cap.
class ScaleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Throws ScaleError if |P(G_m)| exceeds `cap`.
void check_scale(const Prn& prn, std::uint64_t cap = default_enumeration_cap);

/// Calls `visit` on every parametrisation in increasing lexicographic order.
/// Stops early when `visit` returns false.
void for_each_parametrisation(const Prn& prn,
                              const std::function<bool(const Parametrisation&)>& visit,
                              std::uint64_t cap = default_enumeration_cap);

bool concrete_enables(const Prn& prn, const Parametrisation& p, const Transition& t);
bool concrete_satisfies(const Prn& prn, const Parametrisation& p, const InfluenceConstraint& c);
/// The Min-Max rule as a concrete predicate (vacuous when the flag is off).
bool concrete_satisfies_minmax(const Prn& prn, const ConstraintSet& r, const Parametrisation& p);
/// All constraints of R, including Min-Max when enabled.
bool concrete_satisfies_all(const Prn& prn, const ConstraintSet& r, const Parametrisation& p);

/// p_R(T) as an explicit list, in enumeration order.
std::vector<Parametrisation> concrete_pRT(const Prn& prn, const ConstraintSet& r,
                                          std::span<const Transition> transitions,
                                          std::uint64_t cap = default_enumeration_cap);

/// Componentwise (min, max); Empty for an empty set.
ParamBox envelope(std::span<const Parametrisation> set);

/// Smallest convex sublattice containing `set`, found by intersecting every
/// convex sublattice of P(G_m) that contains it. Exponential in |P(G_m)|;
/// refuses more than 16 parametrisations. Returned as the list of members.
std::vector<Parametrisation> smallest_convex_sublattice(const Prn& prn,
                                                        std::span<const Parametrisation> set);
/// Members of a box, in enumeration order.
std::vector<Parametrisation> box_members(const Prn& prn, const ParamBox& box,
                                         std::uint64_t cap = default_enumeration_cap);

/// States reachable from x0 in the network fixed to p.
std::set<State> reachable_states(const Prn& prn, const Parametrisation& p, const State& x0);
/// Union of reachable_states over every parametrisation satisfying R.
std::set<State> reachable_union(const Prn& prn, const ConstraintSet& r, const State& x0,
                                std::uint64_t cap = default_enumeration_cap);

struct Verdict {
  bool ok = true;
  std::string detail; // counterexample description when !ok
};

/// Members of p_abs(T) are exactly the parametrisations enabling T.
Verdict check_transition_abstraction(const Prn& prn, std::span<const Transition> transitions);

using Abstraction =
    std::function<ParamBox(const Prn&, const ConstraintSet&, std::span<const Transition>)>;

/// The abstraction equals the envelope of p_R(T), with agreeing emptiness.
/// Defaults to p_abs_R; other implementations can be injected.
Verdict check_constrained_abstraction(const Prn& prn, const ConstraintSet& r,
                       std::span<const Transition> transitions, const Abstraction& abstraction = {});

/// Sign constraints on v hold for P exactly when P is monotone along the
/// context order of v induced by those signs.
Verdict check_sign_monotonicity(const Prn& prn, const ConstraintSet& r, const Parametrisation& p,
                                NodeId v);
/// When P breaks an observability constraint on v (and every regulator
/// concerned can change value), some P' differing from P in one parameter of
/// v satisfies every observability constraint on v.
Verdict check_single_repair(const Prn& prn, const ConstraintSet& r, const Parametrisation& p,
                            NodeId v);
/// Narrowing a box by the sign constraints on v leaves it unchanged exactly
/// when both bounds are monotone along the context order of v.
Verdict check_monotone_fixpoint(const Prn& prn, const ConstraintSet& r, const ParamBox& box,
                                NodeId v);

/// Uniform random parametrisation.
Parametrisation random_parametrisation(std::mt19937_64& rng, const Prn& prn);
/// Random non-empty box (two random parametrisations, sorted per coordinate).
ParamBox random_box(std::mt19937_64& rng, const Prn& prn);

enum class ConstraintMode { None, SignOnly, ObservableOnly, Mixed };

struct RandomSpec {
  std::size_t max_nodes = 3;
  Value max_value = 2;
  std::size_t max_transitions = 4;
  ConstraintMode mode = ConstraintMode::None;
  bool allow_minmax = false;
  std::uint64_t max_parametrisations = 200'000;
};

struct RandomInstance {
  Prn prn;
  ConstraintSet constraints;
  std::vector<Transition> transitions;
  State initial;
};

/// Draws a network within `spec` (rejecting oversized parameter spaces), a
/// random well-formed constraint set for the mode, random transitions of the
/// unparametrised relation and a random initial state.
RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec);

/// Multi-line human readable description used in failure reports.
std::string describe(const RandomInstance& inst);

} // namespace prn::oracle
