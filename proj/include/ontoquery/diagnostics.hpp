#pragma once

#include <string>
#include <vector>

namespace ontoquery {

enum class Severity { Info, Warning };

/// Structured log record produced while loading or reasoning. Never fatal.
struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string source;  // e.g. "turtle:strains", "schema", "reasoner"
  std::string code;    // e.g. "unsupported-datatype", "subclass-cycle"
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace ontoquery
