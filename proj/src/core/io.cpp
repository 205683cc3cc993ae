#include "prn/io.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace prn {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
      ++j;
    }
    if (j > i) {
      out.push_back(line.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

std::optional<unsigned> parse_uint(std::string_view s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

struct EdgeDecl {
  NodeId from;
  NodeId to;
  int sign; // 0 when unsigned
  bool observable;
};

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::invalid_argument("line " + std::to_string(line) + ": " + message), line_(line) {}

ModelFile parse_model(std::string_view text, std::string name) {
  std::vector<std::string> names;
  std::vector<Value> maxima;
  std::map<std::string, NodeId, std::less<>> ids;
  std::vector<EdgeDecl> edges;
  std::map<NodeId, Value> init;
  bool minmax = false;

  auto lookup = [&](std::size_t line, std::string_view n) {
    auto it = ids.find(n);
    if (it == ids.end()) {
      throw ParseError(line, "undeclared node '" + std::string(n) + "'");
    }
    return it->second;
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto w = split_words(line);
    if (w.empty()) {
      continue;
    }

    if (w[0] == "node") {
      if (w.size() != 3) {
        throw ParseError(lineno, "expected 'node <name> <max>'");
      }
      if (!valid_name(w[1])) {
        throw ParseError(lineno, "invalid node name '" + std::string(w[1]) + "'");
      }
      if (ids.count(w[1]) != 0) {
        throw ParseError(lineno, "duplicate node '" + std::string(w[1]) + "'");
      }
      auto max = parse_uint(w[2]);
      if (!max || *max > max_domain_value) {
        throw ParseError(lineno, "maximum value must be an integer in 0.." +
                                     std::to_string(max_domain_value));
      }
      ids.emplace(std::string(w[1]), static_cast<NodeId>(names.size()));
      names.emplace_back(w[1]);
      maxima.push_back(static_cast<Value>(*max));
    } else if (w[0] == "edge") {
      if (w.size() < 4 || w[2] != "->") {
        throw ParseError(lineno, "expected 'edge <u> -> <v> [sign=+|-] [observable]'");
      }
      EdgeDecl e{lookup(lineno, w[1]), lookup(lineno, w[3]), 0, false};
      bool signed_seen = false;
      for (std::size_t i = 4; i < w.size(); ++i) {
        if (w[i] == "sign=+" || w[i] == "sign=-") {
          if (signed_seen) {
            throw ParseError(lineno, "edge has more than one sign");
          }
          signed_seen = true;
          e.sign = w[i] == "sign=+" ? +1 : -1;
        } else if (w[i] == "observable") {
          if (e.observable) {
            throw ParseError(lineno, "duplicate 'observable'");
          }
          e.observable = true;
        } else {
          throw ParseError(lineno, "unknown edge attribute '" + std::string(w[i]) + "'");
        }
      }
      for (const auto& other : edges) {
        if (other.from == e.from && other.to == e.to) {
          throw ParseError(lineno, "duplicate edge " + std::string(w[1]) + " -> " + std::string(w[3]));
        }
      }
      edges.push_back(e);
    } else if (w[0] == "init") {
      if (w.size() < 2) {
        throw ParseError(lineno, "expected 'init <name>=<value> ...'");
      }
      for (std::size_t i = 1; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(lineno, "expected <name>=<value>, got '" + std::string(w[i]) + "'");
        }
        NodeId v = lookup(lineno, w[i].substr(0, eq));
        auto value = parse_uint(w[i].substr(eq + 1));
        if (!value || *value > maxima[v]) {
          throw ParseError(lineno, "initial value of '" + names[v] + "' must be in 0.." +
                                       std::to_string(maxima[v]));
        }
        if (!init.emplace(v, static_cast<Value>(*value)).second) {
          throw ParseError(lineno, "duplicate initial value for '" + names[v] + "'");
        }
      }
    } else if (w[0] == "option") {
      if (w.size() != 2 || w[1] != "minmax") {
        throw ParseError(lineno, "unknown option");
      }
      minmax = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + std::string(w[0]) + "'");
    }
  }

  if (names.empty()) {
    throw ParseError(lineno, "model declares no nodes");
  }
  InfluenceGraph graph(names.size(), names);
  ConstraintSet r;
  for (const auto& e : edges) {
    graph.add_influence(e.from, e.to);
    if (e.sign != 0) {
      r.add(e.from, e.to, e.sign > 0 ? InfluenceKind::Positive : InfluenceKind::Negative);
    }
    if (e.observable) {
      r.add(e.from, e.to, InfluenceKind::Observable);
    }
  }
  r.set_minmax(minmax);
  State x0{std::vector<Value>(names.size(), 0)};
  for (auto [v, value] : init) {
    x0.values[v] = value;
  }
  try {
    Prn prn(std::move(graph), std::move(maxima));
    r.validate(prn);
    return {std::move(name), std::move(prn), std::move(r), std::move(x0)};
  } catch (const ModelError& e) {
    throw ParseError(lineno, e.what());
  }
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), std::filesystem::path(path).stem().string());
}

std::string print_model(const ModelFile& model) {
  const Prn& prn = model.prn;
  std::ostringstream out;
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    out << "node " << prn.name(v) << ' ' << unsigned(prn.max_value(v)) << '\n';
  }
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    for (NodeId u : prn.regulators(v)) {
      out << "edge " << prn.name(u) << " -> " << prn.name(v);
      int s = model.constraints.sign(u, v);
      if (s != 0) {
        out << (s > 0 ? " sign=+" : " sign=-");
      }
      if (model.constraints.contains({u, v, InfluenceKind::Observable})) {
        out << " observable";
      }
      out << '\n';
    }
  }
  out << "init";
  for (NodeId v = 0; v < prn.node_count(); ++v) {
    out << ' ' << prn.name(v) << '=' << unsigned(model.initial[v]);
  }
  out << '\n';
  if (model.constraints.minmax()) {
    out << "option minmax\n";
  }
  return out.str();
}

std::string emit_dot(const OccurrenceNet& net) {
  const Prn& prn = net.prn();
  std::ostringstream out;
  out << "digraph prefix {\n";
  out << "  rankdir=TB;\n";
  for (const auto& c : net.conditions()) {
    out << "  c" << c.id << " [shape=circle,label=\"" << prn.name(c.node) << ' ' << unsigned(c.value)
        << '"';
    if (c.parent == no_event) {
      out << ",style=filled,fillcolor=lightblue";
    }
    out << "];\n";
  }
  for (const auto& e : net.events()) {
    out << "  e" << e.id << " [shape=box,label=\"" << prn.name(e.node) << direction_symbol(e.direction)
        << '"';
    if (e.cutoff) {
      out << ",style=dashed";
    }
    out << "];\n";
  }
  for (const auto& e : net.events()) {
    for (CondId c : e.preset) {
      out << "  c" << c << " -> e" << e.id << ";\n";
    }
    for (CondId c : e.postset) {
      out << "  e" << e.id << " -> c" << c << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string box_json(const ParamBox& box) {
  nlohmann::ordered_json j;
  if (box.is_empty()) {
    j["empty"] = true;
  } else {
    j["lower"] = box.lower();
    j["upper"] = box.upper();
  }
  return j.dump();
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["model"] = report.model;
    j["nodes"] = report.nodes;
    j["events"] = report.events;
    j["events_with_cutoffs"] = report.events_with_cutoffs;
    j["conditions"] = report.conditions;
    if (report.reachable_states) {
      j["reachable_states"] = *report.reachable_states;
    }
    if (report.runtime_ms) {
      j["runtime_ms"] = *report.runtime_ms;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "model       " << report.model << '\n';
  out << "nodes       " << report.nodes << '\n';
  out << "events      " << report.events << " (" << report.events_with_cutoffs << ")\n";
  out << "conditions  " << report.conditions << '\n';
  if (report.reachable_states) {
    out << "reachable   " << *report.reachable_states << '\n';
  }
  if (report.runtime_ms) {
    out << "runtime_ms  " << *report.runtime_ms << '\n';
  }
  return out.str();
}

} // namespace prn
