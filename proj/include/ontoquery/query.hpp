#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontoquery/knowledge_base.hpp"
#include "ontoquery/rdf.hpp"
#include "ontoquery/suggest.hpp"

namespace ontoquery {

using NodeId = std::uint32_t;

enum class SelectionOp { AnyOf, NoneOf };
std::string_view selection_op_name(SelectionOp op) noexcept;  // "any-of" / "none-of"
std::optional<SelectionOp> parse_selection_op(std::string_view text);

struct InstanceSelection {
  SelectionOp op = SelectionOp::AnyOf;
  std::set<Iri> instances;  // non-empty

  bool operator==(const InstanceSelection&) const = default;
};

enum class Comparator { Less, LessEqual, Equal, GreaterEqual, Greater, NotEqual };
std::string_view comparator_symbol(Comparator c) noexcept;  // "<", "<=", "=", ">=", ">", "!="
/// Also accepts the Unicode forms ≤ ≥ ≠.
std::optional<Comparator> parse_comparator(std::string_view text);

struct Filter {
  Comparator comparator = Comparator::Equal;
  Literal value;

  bool operator==(const Filter&) const = default;
  /// Whether `candidate` satisfies the filter. Numeric comparison when both
  /// sides are numeric, otherwise (=, != only) datatype+lexical equality.
  bool accepts(const Literal& candidate) const;
};

/// What a node binds: instances of a class (extended to subclasses) or
/// literal values of a datatype.
using NodeType = std::variant<Iri, Datatype>;

struct QueryNode {
  NodeId id = 0;
  NodeType type;
  std::optional<InstanceSelection> selection;  // class nodes only
  std::optional<Filter> filter;                // datatype nodes only

  bool is_class() const noexcept { return std::holds_alternative<Iri>(type); }
  const Iri& class_iri() const { return std::get<Iri>(type); }
  Datatype datatype() const { return std::get<Datatype>(type); }

  bool operator==(const QueryNode&) const = default;
};

struct QueryEdge {
  NodeId from = 0;  // parent in the query tree
  Iri property;
  NodeId to = 0;    // child
  Direction direction = Direction::Forward;

  bool operator==(const QueryEdge&) const = default;
};

/// A tree of typed nodes rooted at nodes.front(). Node ids are ordinals in
/// creation order.
struct PathQuery {
  std::vector<QueryNode> nodes;
  std::vector<QueryEdge> edges;
  std::string dataset{kAllDatasets};

  const QueryNode& node(NodeId id) const;  // throws Error(UnknownNode)
  const QueryNode& root() const { return nodes.front(); }
  bool has_node(NodeId id) const;
  /// Edges leaving `id`, in insertion order.
  std::vector<const QueryEdge*> child_edges(NodeId id) const;
  const QueryEdge* parent_edge(NodeId id) const;

  bool operator==(const PathQuery&) const = default;
};

/// Structural and schema checks shared by every constructor of queries:
/// tree shape, known classes/properties, property applicability, target
/// compatibility, selection/filter placement. Throws the matching Error.
void validate(const SchemaIndex& schema, const SubclassClosure& closure, const PathQuery& q);

PathQuery new_query(const KnowledgeBase& kb, const NodeType& root);

/// Appends a node under `from` reached by `property`. Validated against
/// reasoner applicability in the given direction.
PathQuery add_step(const KnowledgeBase& kb, const PathQuery& q, NodeId from, const Iri& property,
                   Direction direction, const NodeType& target);

/// Every instance must be asserted (in some dataset) under the node class
/// or a subclass; offenders are listed in the TypeMismatch error.
PathQuery set_instance_selection(const KnowledgeBase& kb, const PathQuery& q, NodeId node,
                                 SelectionOp op, const std::set<Iri>& instances);

/// Replaces any existing filter on a datatype node.
PathQuery add_literal_filter(const KnowledgeBase& kb, const PathQuery& q, NodeId node,
                             Comparator comparator, const Literal& value);

/// Removes a non-root node without children, with its incoming edge.
PathQuery remove_node(const PathQuery& q, NodeId node);

PathQuery with_dataset(const PathQuery& q, std::string dataset);

/// Deterministic text form; sibling order is normalized (property IRI, then
/// target type), so insertion order among branches does not matter.
std::string canonicalize(const PathQuery& q);

/// Rebuilds a query from canonicalize() output. Node ids follow the
/// canonical pre-order. Throws ParseError(GrammarError) or
/// Error(UnknownSymbol / UnknownClass) and validates the result.
PathQuery parse_canonical(std::string_view text, const SchemaIndex& schema,
                          const SubclassClosure& closure);

/// Stack of snapshots; the top is the current query.
class QueryHistory {
 public:
  QueryHistory() = default;
  explicit QueryHistory(PathQuery initial) { states_.push_back(std::move(initial)); }

  const PathQuery& current() const { return states_.back(); }
  void push(PathQuery q) { states_.push_back(std::move(q)); }
  /// Throws Error(NothingToUndo) with fewer than two states.
  const PathQuery& undo();
  std::size_t depth() const noexcept { return states_.size(); }
  const std::vector<PathQuery>& states() const noexcept { return states_; }

 private:
  std::vector<PathQuery> states_;
};

/// One formulation session: a query history bound to a knowledge base.
/// Each mutation validates first and pushes only on success.
class Formulation {
 public:
  Formulation(KnowledgeBasePtr kb, const NodeType& root);

  const PathQuery& current() const { return history_.current(); }
  const QueryHistory& history() const noexcept { return history_; }
  const KnowledgeBase& knowledge_base() const noexcept { return *kb_; }
  const KnowledgeBasePtr& knowledge_base_ptr() const noexcept { return kb_; }

  const PathQuery& add_step(NodeId from, const Iri& property, Direction direction,
                            const NodeType& target);
  const PathQuery& set_instance_selection(NodeId node, SelectionOp op,
                                          const std::set<Iri>& instances);
  const PathQuery& add_literal_filter(NodeId node, Comparator comparator, const Literal& value);
  const PathQuery& remove_node(NodeId node);
  const PathQuery& undo() { return history_.undo(); }

 private:
  KnowledgeBasePtr kb_;
  QueryHistory history_;
};

}  // namespace ontoquery
