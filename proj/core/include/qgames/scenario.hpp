#pragma once

#include <optional>
#include <string>

#include "qgames/analysis.hpp"
#include "qgames/engine.hpp"

namespace qgames {

struct ParseOptions {
  bool strict = false;  // reject unknown document keys
};

/// A scenario document resolved into engine values. family is present when
/// the document declares a one-parameter input sweep; spec then carries the
/// document's own input state as the point sample.
struct LoadedScenario {
  std::string name;
  int schema_version = 1;
  GameSpec spec;
  std::optional<ParametricFamily> family;
};

/// Exact value of "a/b", a plain integer, or a decimal literal.
double parse_rational(const std::string& text);

/// Parses and validates a UTF-8 JSON scenario document. Errors name the
/// offending field.
LoadedScenario parse_scenario(const std::string& text, const ParseOptions& opts = {});

LoadedScenario load_scenario_file(const std::string& path, const ParseOptions& opts = {});

/// Canonical document for a loaded scenario; parses back to equal values.
std::string scenario_to_json(const LoadedScenario& scenario);

}  // namespace qgames
