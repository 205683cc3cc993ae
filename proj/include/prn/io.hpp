#pragma once

// Model files, DOT export of prefixes and run reports.
//
// Model grammar, one directive per line, '#' starts a comment:
//   node <name> <max>
//   edge <u> -> <v> [sign=+|-] [observable]
//   init <name>=<value> ...
//   option minmax
// Nodes must be declared before use. Nodes without an init entry start at 0.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "prn/constraints.hpp"
#include "prn/model.hpp"
#include "prn/plattice.hpp"
#include "prn/prefix.hpp"

namespace prn {

/// Malformed model text. The message carries the line number.
class ParseError : public std::invalid_argument {
public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ModelFile {
  std::string name;
  Prn prn;
  ConstraintSet constraints;
  State initial;
};

ModelFile parse_model(std::string_view text, std::string name = "model");
/// Reads and parses a file; the model name is the file stem.
ModelFile load_model(const std::string& path);
/// Canonical text: nodes in id order, edges by target then regulator, one
/// init line covering every node.
std::string print_model(const ModelFile& model);

/// Graphviz rendering: circles for conditions, boxes for events, cut-offs dashed.
std::string emit_dot(const OccurrenceNet& net);

std::string box_json(const ParamBox& box);

struct RunReport {
  std::string model;
  std::size_t nodes = 0;
  std::size_t events = 0;
  std::size_t events_with_cutoffs = 0;
  std::size_t conditions = 0;
  std::optional<std::size_t> reachable_states;
  std::optional<double> runtime_ms;
};

enum class ReportFormat { Json, Text };

/// Keys appear in a fixed order; absent optional fields are omitted.
std::string emit_report(const RunReport& report, ReportFormat format);

} // namespace prn
