#include "prn/prn.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include "prn/io.hpp"
#include "prn/oracle.hpp"
#include "prn/prefix.hpp"

struct prn_model {
  prn::ModelFile file;
};

struct prn_prefix {
  std::string model_name;
  prn::ConstraintSet constraints;
  prn::CfpResult result;
  std::optional<std::set<prn::State>> reachable;
};

namespace {

thread_local std::string last_error;

prn_status fail(prn_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.data(), s.size() + 1);
  }
  return out;
}

prn_status give(const std::string& s, char** out) {
  *out = dup(s);
  return *out != nullptr ? PRN_OK : fail(PRN_INTERNAL_ERROR, "out of memory");
}

// Maps library exceptions onto status codes.
template <class F>
prn_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const prn::ParseError& e) {
    return fail(PRN_INPUT_ERROR, e.what());
  } catch (const prn::ModelError& e) {
    return fail(PRN_INPUT_ERROR, e.what());
  } catch (const prn::ResourceLimit& e) {
    return fail(PRN_RESOURCE_LIMIT, e.what());
  } catch (const prn::oracle::ScaleError& e) {
    return fail(PRN_RESOURCE_LIMIT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PRN_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(PRN_INTERNAL_ERROR, e.what());
  }
}

#define PRN_REQUIRE(cond)                                                                          \
  do {                                                                                             \
    if (!(cond)) {                                                                                 \
      return fail(PRN_INPUT_ERROR, "null argument: " #cond);                                       \
    }                                                                                              \
  } while (0)

std::set<prn::State>& reachable(prn_prefix* p) {
  if (!p->reachable) {
    p->reachable = prn::prefix_reachable_states(p->result.net, p->constraints);
  }
  return *p->reachable;
}

// Transitions of a local configuration, replayed in id order.
std::vector<prn::Transition> replay(const prn::OccurrenceNet& net, const prn::Event& ev) {
  std::vector<prn::Transition> out;
  prn::State x = net.initial_state();
  for (prn::EventId id : ev.local_config) {
    const prn::Event& f = net.event(id);
    out.push_back({x, f.node, f.direction});
    x = out.back().target();
  }
  return out;
}

std::string state_list(const std::set<prn::State>& states) {
  std::string out;
  for (const auto& x : states) {
    out += prn::format_state(x);
    out += '\n';
  }
  return out;
}

} // namespace

extern "C" {

const char* prn_last_error(void) { return last_error.c_str(); }

void prn_string_free(char* s) { std::free(s); }

prn_status prn_model_load(const char* path, prn_model** out) {
  PRN_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    try {
      *out = new prn_model{prn::load_model(path)};
    } catch (const prn::ParseError& e) {
      return fail(PRN_INPUT_ERROR, std::string(path) + ": " + e.what());
    } catch (const std::ios_base::failure& e) {
      return fail(PRN_INPUT_ERROR, e.what());
    } catch (const std::runtime_error& e) {
      return fail(PRN_INPUT_ERROR, e.what()); // unreadable file
    }
    return PRN_OK;
  });
}

prn_status prn_model_parse(const char* text, const char* name, prn_model** out) {
  PRN_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] {
    *out = new prn_model{prn::parse_model(text, name ? name : "model")};
    return PRN_OK;
  });
}

void prn_model_free(prn_model* model) { delete model; }

prn_status prn_model_info_get(const prn_model* model, prn_model_info* out) {
  PRN_REQUIRE(model && out);
  return guarded([&] {
    const auto& prn = model->file.prn;
    auto count = prn.parametrisation_count();
    out->nodes = prn.node_count();
    out->influences = prn.graph().influence_count();
    out->constraints = model->file.constraints.size();
    out->minmax = model->file.constraints.minmax() ? 1 : 0;
    out->parameters = prn.param_count();
    out->parametrisations = count.saturated ? UINT64_MAX : count.value;
    out->parametrisations_saturated = count.saturated ? 1 : 0;
    return PRN_OK;
  });
}

prn_status prn_model_describe(const prn_model* model, char** out) {
  PRN_REQUIRE(model && out);
  return guarded([&] {
    const auto& f = model->file;
    const auto& prn = f.prn;
    std::ostringstream s;
    s << "model            " << f.name << '\n';
    s << "nodes            " << prn.node_count() << '\n';
    s << "influences       " << prn.graph().influence_count() << '\n';
    s << "parameters       " << prn.param_count() << '\n';
    s << "parametrisations " << prn.parametrisation_count().to_string() << '\n';
    s << "initial          " << prn::format_state(f.initial) << '\n';
    s << "constraints      " << prn::format_constraints(prn, f.constraints) << '\n';
    prn::ParamBox base = prn::ConstraintEngine(prn, f.constraints).base_box();
    s << "base box         " << prn::format_box(base) << '\n';
    s << "base box size    " << prn::box_size(base).to_string() << '\n';
    return give(s.str(), out);
  });
}

prn_status prn_model_print(const prn_model* model, char** out) {
  PRN_REQUIRE(model && out);
  return guarded([&] { return give(prn::print_model(model->file), out); });
}

prn_status prn_model_warnings(const prn_model* model, char** out) {
  PRN_REQUIRE(model && out);
  return guarded([&] {
    const auto& prn = model->file.prn;
    std::string s;
    for (prn::NodeId v : prn::minmax_skipped_nodes(prn, model->file.constraints)) {
      s += "minmax: node " + prn.name(v) +
           (prn.regulators(v).empty() ? " has no regulators" : " has an unsigned regulator") +
           ", rule not applied\n";
    }
    return give(s, out);
  });
}

prn_status prn_unfold(const prn_model* model, const prn_unfold_options* options, prn_prefix** out) {
  PRN_REQUIRE(model && out);
  *out = nullptr;
  return guarded([&] {
    prn::CfpLimits limits;
    prn::ConstraintSet r = model->file.constraints;
    if (options != nullptr) {
      if (options->max_events > 0) {
        limits.max_events = options->max_events;
      }
      if (options->max_seconds > 0) {
        limits.max_seconds = options->max_seconds;
      }
      if (options->no_constraints) {
        r = prn::ConstraintSet{};
      }
    }
    auto result = prn::build_cfp(model->file.prn, r, model->file.initial, limits);
    *out = new prn_prefix{model->file.name, r, std::move(result), std::nullopt};
    switch ((*out)->result.status) {
    case prn::CfpStatus::Complete:
      return PRN_OK;
    case prn::CfpStatus::EventLimit:
      return fail(PRN_RESOURCE_LIMIT, "event limit reached, prefix incomplete");
    case prn::CfpStatus::TimeLimit:
      return fail(PRN_RESOURCE_LIMIT, "time limit reached, prefix incomplete");
    }
    return PRN_OK;
  });
}

void prn_prefix_free(prn_prefix* prefix) { delete prefix; }

prn_status prn_prefix_stats_get(const prn_prefix* prefix, prn_prefix_stats* out) {
  PRN_REQUIRE(prefix && out);
  return guarded([&] {
    auto st = prefix->result.stats();
    out->events = st.events;
    out->events_with_cutoffs = st.events_with_cutoffs;
    out->conditions = st.conditions;
    out->runtime_ms = prefix->result.runtime_ms;
    out->complete = prefix->result.status == prn::CfpStatus::Complete ? 1 : 0;
    return PRN_OK;
  });
}

prn_status prn_prefix_dot(const prn_prefix* prefix, char** out) {
  PRN_REQUIRE(prefix && out);
  return guarded([&] { return give(prn::emit_dot(prefix->result.net), out); });
}

prn_status prn_prefix_reachable_count(prn_prefix* prefix, size_t* out) {
  PRN_REQUIRE(prefix && out);
  return guarded([&] {
    *out = reachable(prefix).size();
    return PRN_OK;
  });
}

prn_status prn_prefix_reachable_states(prn_prefix* prefix, char** out) {
  PRN_REQUIRE(prefix && out);
  return guarded([&] { return give(state_list(reachable(prefix)), out); });
}

prn_status prn_prefix_report(prn_prefix* prefix, int include_reachable, int include_runtime,
                             int as_json, char** out) {
  PRN_REQUIRE(prefix && out);
  return guarded([&] {
    auto st = prefix->result.stats();
    prn::RunReport rep;
    rep.model = prefix->model_name;
    rep.nodes = prefix->result.net.prn().node_count();
    rep.events = st.events;
    rep.events_with_cutoffs = st.events_with_cutoffs;
    rep.conditions = st.conditions;
    if (include_reachable) {
      rep.reachable_states = reachable(prefix).size();
    }
    if (include_runtime) {
      rep.runtime_ms = prefix->result.runtime_ms;
    }
    return give(prn::emit_report(rep, as_json ? prn::ReportFormat::Json : prn::ReportFormat::Text), out);
  });
}

prn_status prn_verify_model(const prn_model* model, char** report) {
  PRN_REQUIRE(model && report);
  *report = nullptr;
  return guarded([&] {
    const auto& f = model->file;
    prn::oracle::check_scale(f.prn);
    std::ostringstream s;
    bool ok = true;

    auto cfp = prn::build_cfp(f.prn, f.constraints, f.initial);
    const auto& net = cfp.net;
    std::size_t box_failures = 0;
    for (const auto& ev : net.events()) {
      auto ts = replay(net, ev);
      auto v = prn::oracle::check_constrained_abstraction(
          f.prn, f.constraints, ts,
          [&](const prn::Prn&, const prn::ConstraintSet&, std::span<const prn::Transition>) { return ev.box; });
      if (!v.ok) {
        ++box_failures;
        s << "FAIL event e" << ev.id + 1 << ": " << v.detail << '\n';
      }
    }
    s << (box_failures == 0 ? "ok   " : "FAIL ") << "event boxes equal the concrete envelope ("
      << net.events().size() << " events)\n";
    ok = ok && box_failures == 0;

    auto from_prefix = prn::prefix_reachable_states(net, f.constraints);
    auto from_oracle = prn::oracle::reachable_union(f.prn, f.constraints, f.initial);
    bool same = from_prefix == from_oracle;
    s << (same ? "ok   " : "FAIL ") << "reachable states: prefix " << from_prefix.size() << ", oracle "
      << from_oracle.size() << '\n';
    ok = ok && same;
    s << (ok ? "verified" : "verification failed") << '\n';
    if (give(s.str(), report) != PRN_OK) {
      return PRN_INTERNAL_ERROR;
    }
    return ok ? PRN_OK : fail(PRN_VERIFICATION_FAILED, "verification failed");
  });
}

prn_status prn_verify_random(uint64_t seed, size_t trials, char** report) {
  PRN_REQUIRE(report);
  *report = nullptr;
  return guarded([&] {
    using namespace prn::oracle;
    std::mt19937_64 rng(seed);
    const ConstraintMode modes[] = {ConstraintMode::None, ConstraintMode::SignOnly,
                                    ConstraintMode::ObservableOnly, ConstraintMode::Mixed};
    std::ostringstream s;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      RandomSpec spec;
      spec.mode = modes[i % 4];
      spec.allow_minmax = true;
      auto inst = random_instance(rng, spec);
      std::string problem;
      if (auto v = check_transition_abstraction(inst.prn, inst.transitions); !v.ok) {
        problem = "transition abstraction: " + v.detail;
      } else if (auto v2 = check_constrained_abstraction(inst.prn, inst.constraints, inst.transitions); !v2.ok) {
        problem = "constrained abstraction: " + v2.detail;
      } else {
        auto cfp = prn::build_cfp(inst.prn, inst.constraints, inst.initial);
        auto mine = prn::prefix_reachable_states(cfp.net, inst.constraints);
        auto ref = reachable_union(inst.prn, inst.constraints, inst.initial);
        if (mine != ref) {
          problem = "prefix reaches " + std::to_string(mine.size()) + " states, oracle " +
                    std::to_string(ref.size());
        }
      }
      if (problem.empty()) {
        s << "trial " << i + 1 << " ok\n";
      } else {
        ++failures;
        s << "trial " << i + 1 << " FAIL " << problem << '\n' << describe(inst);
      }
    }
    s << (trials - failures) << '/' << trials << " trials passed\n";
    if (give(s.str(), report) != PRN_OK) {
      return PRN_INTERNAL_ERROR;
    }
    return failures == 0 ? PRN_OK : fail(PRN_VERIFICATION_FAILED, std::to_string(failures) + " trials failed");
  });
}

} // extern "C"
