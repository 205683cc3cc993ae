// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   acceptance [--cli PATH] [--only N]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "prn/io.hpp"
#include "prn/oracle.hpp"
#include "prn/prefix.hpp"

using namespace prn;
namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string models_dir = PRN_MODELS_DIR;
std::string cli_path;

State st(std::initializer_list<int> v) {
  State x;
  for (int i : v) {
    x.values.push_back(static_cast<Value>(i));
  }
  return x;
}

std::vector<Value> digits(const std::string& s) {
  std::vector<Value> out;
  for (char c : s) {
    out.push_back(static_cast<Value>(c - '0'));
  }
  return out;
}

ParamBox box(const std::string& lo, const std::string& hi) { return {digits(lo), digits(hi)}; }

Prn three_nodes(Value ma) {
  InfluenceGraph g(3, {"a", "b", "c"});
  g.add_influence(0, 0);
  g.add_influence(1, 1);
  g.add_influence(0, 2);
  g.add_influence(1, 2);
  return Prn(std::move(g), {ma, 1, 1});
}

const std::vector<Transition>& example_transitions() {
  static const std::vector<Transition> t{{st({1, 1, 0}), 2, Direction::Up},
                                         {st({1, 1, 1}), 1, Direction::Down}};
  return t;
}

// Mean over repetitions, so a single cold run does not decide the timing.
template <class F>
double mean_ms(F&& f, int reps = 200) {
  auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) {
    f();
  }
  return ms_since(t0) / reps;
}

std::string fmt_ms(double ms) {
  std::ostringstream s;
  s.precision(ms < 1 ? 3 : 1);
  s << std::fixed << ms << " ms";
  return s.str();
}

Outcome criterion1() {
  Prn prn = three_nodes(2);
  ParamBox got = p_abs(prn, example_transitions());
  double t = mean_ms([&] { (void)p_abs(prn, example_transitions()); });
  bool ok = got == box("00000000100", "22210111111") && t < 1.0;
  return {ok, format_box(got) + ", " + fmt_ms(t)};
}

Outcome criterion2() {
  Prn prn = three_nodes(2);
  ConstraintSet r;
  r.add(0, 2, InfluenceKind::Positive);
  r.add(1, 1, InfluenceKind::Observable);
  ParamBox got = p_abs_R(prn, r, example_transitions());
  double t = mean_ms([&] { (void)p_abs_R(prn, r, example_transitions()); });
  bool ok = got == box("00010000101", "22210111111") && t < 1.0;
  return {ok, format_box(got) + ", " + fmt_ms(t)};
}

Outcome criterion3() {
  Prn prn = three_nodes(1);
  const InfluenceConstraint bc{1, 2, InfluenceKind::Observable};

  ConstraintSet r1;
  r1.add(bc);
  ParamBox b1 = box("00000011", "11111011");
  ConstraintEngine(prn, r1).narrow_observable(b1, bc);
  bool ok1 = b1 == box("00001011", "11111011"); // L at <00> raised, U untouched

  ConstraintSet r2;
  r2.add(0, 2, InfluenceKind::Positive);
  r2.add(1, 2, InfluenceKind::Positive);
  r2.add(bc);
  ParamBox b2 = box("00000000", "11111111");
  ConstraintEngine(prn, r2).narrow_observable(b2, bc);
  bool ok2 = b2 == box("00000001", "11110111"); // L at <11> raised, U at <00> lowered

  return {ok1 && ok2, "first " + format_box(b1) + ", second " + format_box(b2)};
}

// Runs `trials` random instances through `check`, stopping at the first failure.
Outcome random_suite(std::uint64_t seed, std::size_t trials, double budget_ms,
                     const std::vector<oracle::ConstraintMode>& modes, bool minmax,
                     const std::function<oracle::Verdict(const oracle::RandomInstance&)>& check) {
  std::mt19937_64 rng(seed);
  auto t0 = clock_type::now();
  for (std::size_t i = 0; i < trials; ++i) {
    oracle::RandomSpec spec;
    spec.mode = modes[i % modes.size()];
    spec.allow_minmax = minmax;
    auto inst = oracle::random_instance(rng, spec);
    auto v = check(inst);
    if (!v.ok) {
      return {false, "trial " + std::to_string(i + 1) + ": " + v.detail + "\n" + oracle::describe(inst)};
    }
  }
  double t = ms_since(t0);
  return {t < budget_ms, std::to_string(trials) + " trials, " + fmt_ms(t)};
}

Outcome criterion4() {
  return random_suite(4, 500, 60'000, {oracle::ConstraintMode::None}, false, [](const auto& inst) {
    return oracle::check_transition_abstraction(inst.prn, inst.transitions);
  });
}

Outcome criterion5() {
  using M = oracle::ConstraintMode;
  return random_suite(5, 600, 300'000, {M::SignOnly, M::ObservableOnly, M::Mixed}, true, [](const auto& inst) {
    return oracle::check_constrained_abstraction(inst.prn, inst.constraints, inst.transitions);
  });
}

Outcome criterion6() {
  auto t0 = clock_type::now();
  ModelFile m = load_model(models_dir + "/signed.prn");
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial);
  double t = ms_since(t0);
  const auto& net = r.net;
  auto find = [&](NodeId node, std::vector<EventId> past) -> std::optional<EventId> {
    std::sort(past.begin(), past.end());
    for (const auto& e : net.events()) {
      std::vector<EventId> p = e.local_config;
      p.erase(std::find(p.begin(), p.end(), e.id));
      if (e.node == node && e.direction == Direction::Up && p == past) {
        return e.id;
      }
    }
    return std::nullopt;
  };
  auto e1 = find(0, {});
  auto e2 = find(1, {});
  if (!e1 || !e2) {
    return {false, "a+ or b+ from the initial state missing"};
  }
  auto e3 = find(2, {*e1, *e2});
  auto e4 = find(2, {*e2});
  if (!e3 || !e4) {
    return {false, "c+ events missing"};
  }
  auto e5 = find(0, {*e2, *e4});
  if (!e5) {
    return {false, "a+ after c+ missing"};
  }
  const Event& ev3 = net.event(*e3);
  const Event& ev5 = net.event(*e5);
  bool ok = ev3.box.lower() == digits("10010000101") && ev5.box.lower() == digits("10010010101") &&
            ev5.cutoff && ev5.witness == *e3 && !ev3.cutoff && ev3.state == st({1, 1, 1}) &&
            ev5.state == st({1, 1, 1}) && t < 1000;
  std::ostringstream s;
  s << "e3 " << format_box(ev3.box) << ", e5 " << format_box(ev5.box) << (ev5.cutoff ? " cut-off" : "")
    << " witness " << (ev5.witness == *e3 ? "e3" : "other") << ", " << fmt_ms(t);
  return {ok, s.str()};
}

Outcome criterion7() {
  using M = oracle::ConstraintMode;
  return random_suite(7, 300, 600'000, {M::None, M::SignOnly, M::ObservableOnly, M::Mixed}, true,
                      [](const auto& inst) {
                        auto cfp = build_cfp(inst.prn, inst.constraints, inst.initial);
                        auto mine = prefix_reachable_states(cfp.net, inst.constraints);
                        auto ref = oracle::reachable_union(inst.prn, inst.constraints, inst.initial);
                        oracle::Verdict v;
                        if (mine != ref) {
                          v.ok = false;
                          v.detail = "prefix " + std::to_string(mine.size()) + " states, oracle " +
                                     std::to_string(ref.size());
                        }
                        return v;
                      });
}

Outcome criterion8() {
  using M = oracle::ConstraintMode;
  std::mt19937_64 rng(8);
  const std::size_t samples = 1000;
  std::size_t applicable_repairs = 0;
  auto t0 = clock_type::now();
  for (std::size_t i = 0; i < samples; ++i) {
    oracle::RandomSpec spec;
    spec.mode = i % 2 ? M::Mixed : M::SignOnly;
    auto inst = oracle::random_instance(rng, spec);
    auto p = oracle::random_parametrisation(rng, inst.prn);
    auto b = oracle::random_box(rng, inst.prn);
    // Observability-heavy set for the repair property.
    ConstraintSet all_obs = inst.constraints;
    for (NodeId v = 0; v < inst.prn.node_count(); ++v) {
      for (NodeId u : inst.prn.regulators(v)) {
        all_obs.add(u, v, InfluenceKind::Observable);
      }
    }
    for (NodeId v = 0; v < inst.prn.node_count(); ++v) {
      if (auto r = oracle::check_sign_monotonicity(inst.prn, inst.constraints, p, v); !r.ok) {
        return {false, "sign/monotonicity: " + r.detail};
      }
      if (auto r = oracle::check_monotone_fixpoint(inst.prn, inst.constraints, b, v); !r.ok) {
        return {false, "monotone fixpoint: " + r.detail};
      }
      if (auto r = oracle::check_single_repair(inst.prn, all_obs, p, v); !r.ok) {
        return {false, "single repair: " + r.detail};
      }
      bool broken = false;
      for (const auto& c : all_obs.constraints()) {
        broken |= c.target == v && !oracle::concrete_satisfies(inst.prn, p, c);
      }
      applicable_repairs += broken ? 1 : 0;
    }
  }
  return {applicable_repairs > 0, std::to_string(samples) + " samples each, " +
                                      std::to_string(applicable_repairs) + " repair cases, " +
                                      fmt_ms(ms_since(t0))};
}

Outcome criterion9() {
  ModelFile m = load_model(models_dir + "/cortical.prn");
  CfpLimits lim;
  lim.max_seconds = 300;
  CfpResult r = build_cfp(m.prn, m.constraints, m.initial, lim);
  auto s = r.stats();
  auto within = [](double got, double want) { return got >= want * 0.85 && got <= want * 1.15; };
  bool ok = r.status == CfpStatus::Complete && within(double(s.events), 554) &&
            within(double(s.events_with_cutoffs), 1939) && r.runtime_ms < 300'000;
  std::ostringstream out;
  out << s.events << " (" << s.events_with_cutoffs << "), target 554 (1939) +-15%, " << fmt_ms(r.runtime_ms);
  return {ok, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10() {
  if (cli_path.empty()) {
    return {false, "no --cli given"};
  }
  fs::path dir = fs::temp_directory_path() / ("prn-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t compared = 0;
  std::string problem;
  std::vector<fs::path> models;
  for (const auto& entry : fs::directory_iterator(models_dir)) {
    if (entry.path().extension() == ".prn") {
      models.push_back(entry.path());
    }
  }
  std::sort(models.begin(), models.end());
  for (const auto& model : models) {
    std::string out[2][2];
    for (int run = 0; run < 2 && problem.empty(); ++run) {
      fs::path dot = dir / ("run" + std::to_string(run) + ".dot");
      fs::path json = dir / ("run" + std::to_string(run) + ".json");
      std::string cmd = "\"" + cli_path + "\" unfold \"" + model.string() + "\" --dot \"" + dot.string() +
                        "\" --json \"" + json.string() + "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        problem = "unfold failed on " + model.filename().string();
        break;
      }
      out[run][0] = slurp(dot);
      out[run][1] = slurp(json);
    }
    if (!problem.empty()) {
      break;
    }
    if (out[0][0] != out[1][0] || out[0][1] != out[1][1] || out[0][0].empty() || out[0][1].empty()) {
      problem = "outputs differ on " + model.filename().string();
      break;
    }
    ++compared;
  }
  fs::remove_all(dir);
  if (!problem.empty()) {
    return {false, problem};
  }
  return {compared > 0, std::to_string(compared) + " models, DOT and JSON identical across two runs"};
}

} // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli_path = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--models" && i + 1 < argc) {
      models_dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--cli PATH] [--only N] [--models DIR]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"transition narrowing example", criterion1},
      {"constrained narrowing example", criterion2},
      {"observability examples", criterion3},
      {"unconstrained abstraction vs oracle", criterion4},
      {"constrained abstraction vs oracle", criterion5},
      {"prefix excerpt and cut-off", criterion6},
      {"prefix reachability vs oracle", criterion7},
      {"lemma properties", criterion8},
      {"cortical development event count", criterion9},
      {"unfold determinism", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != int(i + 1)) {
      continue;
    }
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1 < 10 ? " " : "") << i + 1 << "  "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
