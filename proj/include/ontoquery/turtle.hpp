#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ontoquery/diagnostics.hpp"
#include "ontoquery/graph.hpp"

namespace ontoquery {

/// Parses a Turtle document into a graph.
///
/// Supported subset: @prefix / PREFIX directives, absolute IRIs, prefixed
/// names, the `a` keyword, blank-node labels and `[ ... ]` property lists,
/// predicate (`;`) and object (`,`) lists, single-line string literals
/// with optional `^^` datatype, integer/decimal/boolean shorthand.
/// Collections, language tags, @base and long strings are rejected.
///
/// Blank nodes are relabelled b0, b1, ... in order of first appearance, so
/// loading the same text twice yields identical graphs. Literals typed with
/// an unsupported datatype become strings and add a warning to
/// `diagnostics` (when given).
///
/// Throws ParseError carrying line and column.
Graph load_turtle(std::string_view document, std::string graph_id,
                  Diagnostics* diagnostics = nullptr);

/// Reads a UTF-8 file; throws Error(IoError) when unreadable.
Graph load_turtle_file(const std::filesystem::path& path, std::string graph_id,
                       Diagnostics* diagnostics = nullptr);

/// One statement per line in graph order (subject, predicate, object).
std::string to_turtle(const Graph& graph);

}  // namespace ontoquery
