// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prn/prn.h"

namespace {

enum Exit { ok = 0, verification_failed = 1, input_error = 2, resource_limit = 3, internal_error = 4 };

struct ModelDel {
  void operator()(prn_model* m) const { prn_model_free(m); }
};
struct PrefixDel {
  void operator()(prn_prefix* p) const { prn_prefix_free(p); }
};
using Model = std::unique_ptr<prn_model, ModelDel>;
using Prefix = std::unique_ptr<prn_prefix, PrefixDel>;

int exit_code(prn_status s) {
  switch (s) {
  case PRN_OK:
    return ok;
  case PRN_VERIFICATION_FAILED:
    return verification_failed;
  case PRN_INPUT_ERROR:
    return input_error;
  case PRN_RESOURCE_LIMIT:
    return resource_limit;
  default:
    return internal_error;
  }
}

int report_error(prn_status s) {
  std::cerr << "prn: " << prn_last_error() << '\n';
  return exit_code(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  prn_string_free(s);
  return out;
}

bool write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "prn: cannot write " << path << '\n';
    return false;
  }
  return true;
}

Model load(const std::string& path, int& code) {
  prn_model* m = nullptr;
  prn_status s = prn_model_load(path.c_str(), &m);
  if (s != PRN_OK) {
    code = report_error(s);
    return nullptr;
  }
  char* warnings = nullptr;
  if (prn_model_warnings(m, &warnings) == PRN_OK) {
    std::cerr << take(warnings);
  }
  return Model(m);
}

struct UnfoldArgs {
  std::string model;
  std::string dot;
  std::string json;
  std::size_t max_events = 0;
  double timeout = 0;
  bool no_constraints = false;
  bool no_reach = false;
  bool timing = false;
};

int run_unfold(const UnfoldArgs& a) {
  int code = ok;
  Model model = load(a.model, code);
  if (!model) {
    return code;
  }
  prn_unfold_options opts{a.max_events, a.timeout, a.no_constraints ? 1 : 0};
  prn_prefix* raw = nullptr;
  prn_status s = prn_unfold(model.get(), &opts, &raw);
  Prefix prefix(raw);
  if (!prefix) {
    return report_error(s);
  }
  if (s != PRN_OK) {
    std::cerr << "prn: " << prn_last_error() << '\n';
    code = exit_code(s);
  }

  // Reachability of a truncated prefix would be misleading.
  const int reach = (s == PRN_OK && !a.no_reach) ? 1 : 0;
  char* text = nullptr;
  prn_status rs = prn_prefix_report(prefix.get(), reach, a.timing, 0, &text);
  if (rs != PRN_OK) {
    return report_error(rs);
  }
  std::cout << take(text);

  if (!a.json.empty()) {
    char* json = nullptr;
    if ((rs = prn_prefix_report(prefix.get(), reach, a.timing, 1, &json)) != PRN_OK) {
      return report_error(rs);
    }
    if (!write_file(a.json, take(json))) {
      return input_error;
    }
  }
  if (!a.dot.empty()) {
    char* dot = nullptr;
    if ((rs = prn_prefix_dot(prefix.get(), &dot)) != PRN_OK) {
      return report_error(rs);
    }
    if (!write_file(a.dot, take(dot))) {
      return input_error;
    }
  }
  return code;
}

int run_reach(const std::string& path, bool no_constraints) {
  int code = ok;
  Model model = load(path, code);
  if (!model) {
    return code;
  }
  prn_unfold_options opts{0, 0, no_constraints ? 1 : 0};
  prn_prefix* raw = nullptr;
  prn_status s = prn_unfold(model.get(), &opts, &raw);
  Prefix prefix(raw);
  if (s != PRN_OK) {
    return report_error(s);
  }
  char* states = nullptr;
  if ((s = prn_prefix_reachable_states(prefix.get(), &states)) != PRN_OK) {
    return report_error(s);
  }
  std::string text = take(states);
  std::cout << text;
  std::cerr << std::count(text.begin(), text.end(), '\n') << " reachable states\n";
  return ok;
}

int run_info(const std::string& path) {
  int code = ok;
  Model model = load(path, code);
  if (!model) {
    return code;
  }
  char* text = nullptr;
  prn_status s = prn_model_describe(model.get(), &text);
  if (s != PRN_OK) {
    return report_error(s);
  }
  std::cout << take(text);
  return ok;
}

int run_verify(const std::string& path, std::optional<std::uint64_t> seed, std::size_t trials) {
  char* report = nullptr;
  prn_status s;
  if (seed) {
    s = prn_verify_random(*seed, trials, &report);
  } else {
    int code = ok;
    Model model = load(path, code);
    if (!model) {
      return code;
    }
    s = prn_verify_model(model.get(), &report);
  }
  std::cout << take(report);
  if (s != PRN_OK) {
    std::cerr << "prn: " << prn_last_error() << '\n';
  }
  return exit_code(s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfoldings of parametric regulatory networks"};
  app.require_subcommand(1);

  UnfoldArgs ua;
  auto* unfold = app.add_subcommand("unfold", "Build the complete finite prefix and report its size");
  unfold->add_option("model", ua.model, "Model file")->required();
  unfold->add_option("--dot", ua.dot, "Write the prefix as Graphviz DOT ('-' for stdout)");
  unfold->add_option("--json", ua.json, "Write the statistics as JSON ('-' for stdout)");
  unfold->add_option("--max-events", ua.max_events, "Stop after N events (exit code 3)");
  unfold->add_option("--timeout", ua.timeout, "Stop after SECONDS (exit code 3)");
  unfold->add_flag("--no-constraints", ua.no_constraints, "Ignore the model's influence constraints");
  unfold->add_flag("--no-reach", ua.no_reach, "Skip counting reachable states");
  unfold->add_flag("--timing", ua.timing, "Include runtime_ms in the reports");

  std::string verify_model;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  auto* verify = app.add_subcommand("verify", "Check against the brute-force oracle");
  verify->add_option("model", verify_model, "Model file (desk scale)");
  auto* seed_opt = verify->add_option("--random", seed, "Run random trials from SEED");
  verify->add_option("--trials", trials, "Number of random trials")->needs(seed_opt);
  verify->callback([&] {
    if (verify_model.empty() == !seed_opt->count()) {
      throw CLI::ValidationError("verify", "give either a model or --random SEED");
    }
  });

  std::string reach_model;
  bool reach_no_constraints = false;
  auto* reach = app.add_subcommand("reach", "Print the reachable states, one per line");
  reach->add_option("model", reach_model, "Model file")->required();
  reach->add_flag("--no-constraints", reach_no_constraints, "Ignore the model's influence constraints");

  std::string info_model;
  auto* info = app.add_subcommand("info", "Print model sizes and the constrained base box");
  info->add_option("model", info_model, "Model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  if (*unfold) {
    return run_unfold(ua);
  }
  if (*verify) {
    return run_verify(verify_model, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                      trials);
  }
  if (*reach) {
    return run_reach(reach_model, reach_no_constraints);
  }
  return run_info(info_model);
}
