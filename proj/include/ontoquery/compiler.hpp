#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontoquery/query.hpp"
#include "ontoquery/reasoner.hpp"
#include "ontoquery/schema.hpp"

namespace ontoquery {

/// Seeds a class node with the instances of its class and all subclasses.
struct ExtendedTypeScan {
  NodeId node;
  Iri cls;
  bool operator==(const ExtendedTypeScan&) const = default;
};

/// Extends every partial row along one query edge.
struct EdgeJoin {
  QueryEdge edge;
  bool operator==(const EdgeJoin&) const = default;
};

struct InstanceRestrict {
  NodeId node;
  SelectionOp op;
  std::set<Iri> instances;
  bool operator==(const InstanceRestrict&) const = default;
};

/// Declares a datatype node: values reached from `from` via `property`
/// must be literals of `datatype`.
struct LiteralBind {
  NodeId node;
  Iri property;
  NodeId from;
  Datatype datatype;
  bool operator==(const LiteralBind&) const = default;
};

struct FilterApply {
  NodeId node;
  Filter filter;
  bool operator==(const FilterApply&) const = default;
};

using PlanStep = std::variant<ExtendedTypeScan, EdgeJoin, InstanceRestrict, LiteralBind, FilterApply>;

struct OutputColumn {
  NodeId node;
  std::string label;  // class label, or the incoming property label for datatype nodes
  NodeType type;
  std::optional<Iri> via_property;  // incoming edge property (absent for the root)

  bool operator==(const OutputColumn&) const = default;
};

/// Steps in topological order along the query tree from the root: a node's
/// scan (or literal bind) precedes the join that reaches it, and its
/// restrict/filter steps follow that join.
struct EvaluationPlan {
  std::vector<PlanStep> steps;
  std::vector<OutputColumn> columns;  // node creation order
  std::string dataset;
};

EvaluationPlan compile(const PathQuery& q, const SchemaIndex& schema,
                       const SubclassClosure& closure);

struct SparqlText {
  std::string text;
  std::map<NodeId, std::string> variables;  // without the leading '?'
};

/// "any_" + snake-cased label + (id + 1); e.g. any_cell_cloning1.
std::string variable_name(std::string_view label, NodeId id);

/// Emits the query text (grammar in docs/query-text.md). Type atoms carry
/// subclass-extended semantics; inverse edges are written with subject and
/// object swapped. Byte-identical for identical queries.
SparqlText emit_sparql(const PathQuery& q, const SchemaIndex& schema);

/// Reads emit_sparql output (or hand-written text in the same grammar).
/// Throws ParseError(GrammarError) with position, Error(UnknownSymbol) for
/// IRIs the schema does not know, and validation errors for ill-formed
/// query trees.
PathQuery parse_query_text(std::string_view text, const SchemaIndex& schema,
                           const SubclassClosure& closure);

}  // namespace ontoquery
