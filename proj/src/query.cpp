#include "ontoquery/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "ontoquery/error.hpp"

namespace ontoquery {

std::string_view selection_op_name(SelectionOp op) noexcept {
  return op == SelectionOp::AnyOf ? "any-of" : "none-of";
}

std::optional<SelectionOp> parse_selection_op(std::string_view text) {
  if (text == "any-of") return SelectionOp::AnyOf;
  if (text == "none-of") return SelectionOp::NoneOf;
  return std::nullopt;
}

std::string_view comparator_symbol(Comparator c) noexcept {
  switch (c) {
    case Comparator::Less: return "<";
    case Comparator::LessEqual: return "<=";
    case Comparator::Equal: return "=";
    case Comparator::GreaterEqual: return ">=";
    case Comparator::Greater: return ">";
    case Comparator::NotEqual: return "!=";
  }
  return "=";
}

std::optional<Comparator> parse_comparator(std::string_view t) {
  if (t == "<") return Comparator::Less;
  if (t == "<=" || t == "≤") return Comparator::LessEqual;
  if (t == "=" || t == "==") return Comparator::Equal;
  if (t == ">=" || t == "≥") return Comparator::GreaterEqual;
  if (t == ">") return Comparator::Greater;
  if (t == "!=" || t == "≠") return Comparator::NotEqual;
  return std::nullopt;
}

bool Filter::accepts(const Literal& candidate) const {
  const auto& a = candidate.numeric_value();
  const auto& b = value.numeric_value();
  if (a && b) {
    switch (comparator) {
      case Comparator::Less: return *a < *b;
      case Comparator::LessEqual: return *a <= *b;
      case Comparator::Equal: return *a == *b;
      case Comparator::GreaterEqual: return *a >= *b;
      case Comparator::Greater: return *a > *b;
      case Comparator::NotEqual: return *a != *b;
    }
  }
  switch (comparator) {
    case Comparator::Equal: return candidate == value;
    case Comparator::NotEqual: return !(candidate == value);
    default: return false;
  }
}

const QueryNode& PathQuery::node(NodeId id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw Error(ErrorCode::UnknownNode, "query has no node " + std::to_string(id));
}

bool PathQuery::has_node(NodeId id) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const QueryNode& n) { return n.id == id; });
}

std::vector<const QueryEdge*> PathQuery::child_edges(NodeId id) const {
  std::vector<const QueryEdge*> out;
  for (const auto& e : edges)
    if (e.from == id) out.push_back(&e);
  return out;
}

const QueryEdge* PathQuery::parent_edge(NodeId id) const {
  for (const auto& e : edges)
    if (e.to == id) return &e;
  return nullptr;
}

namespace {

std::string describe(const SchemaIndex& schema, const NodeType& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) {
    const auto* c = schema.find_class(*iri);
    return "'" + (c ? c->label : iri->str()) + "'";
  }
  return "datatype " + std::string(datatype_name(std::get<Datatype>(t)));
}

bool contains_property(const std::vector<PropertyInfo>& props, const Iri& iri) {
  return std::any_of(props.begin(), props.end(),
                     [&](const PropertyInfo& p) { return p.iri == iri; });
}

void check_edge(const SchemaIndex& schema, const SubclassClosure& closure, const QueryNode& from,
                const QueryEdge& edge, const QueryNode& to) {
  const PropertyInfo& prop = schema.property_info(edge.property);
  auto inapplicable = [&]() {
    return Error(ErrorCode::InapplicableProperty,
                 "property '" + prop.label + "' is not applicable to " +
                     describe(schema, from.type) + " in " +
                     std::string(direction_name(edge.direction)) + " direction");
  };
  auto incompatible = [&]() {
    return Error(ErrorCode::IncompatibleTarget,
                 describe(schema, to.type) + " is not a compatible " +
                     (edge.direction == Direction::Forward ? "range" : "domain") +
                     " for property '" + prop.label + "'");
  };

  if (!from.is_class()) throw inapplicable();
  const Iri& cls = from.class_iri();

  if (edge.direction == Direction::Forward) {
    if (!contains_property(properties_of(schema, closure, cls), edge.property))
      throw inapplicable();
    if (prop.kind == PropertyKind::Data) {
      if (to.is_class()) throw incompatible();
      if (!prop.ranges.empty() && !prop.ranges.count(datatype_iri(to.datatype())))
        throw incompatible();
      return;
    }
    if (!to.is_class()) throw incompatible();
    schema.class_info(to.class_iri());
    const auto targets = forward_targets(schema, closure, cls, edge.property);
    if (targets.empty()) return;
    for (const auto& t : targets)
      if (compatible(closure, to.class_iri(), t)) return;
    throw incompatible();
  }

  if (prop.kind == PropertyKind::Data ||
      !contains_property(incoming_properties_of(schema, closure, cls), edge.property))
    throw inapplicable();
  if (!to.is_class()) throw incompatible();
  schema.class_info(to.class_iri());
  const auto targets = inverse_targets(schema, edge.property);
  if (targets.empty()) return;
  for (const auto& t : targets)
    if (compatible(closure, to.class_iri(), t)) return;
  throw incompatible();
}

void check_filter(const QueryNode& node, const Filter& f) {
  if (node.is_class())
    throw Error(ErrorCode::DatatypeMismatch,
                "filters apply to datatype nodes only (node " + std::to_string(node.id) + ")");
  const Datatype dt = node.datatype();
  const Datatype vt = f.value.datatype();
  const bool ordering = f.comparator != Comparator::Equal && f.comparator != Comparator::NotEqual;
  if (is_numeric(dt)) {
    if (!is_numeric(vt))
      throw Error(ErrorCode::DatatypeMismatch,
                  "filter value '" + f.value.lexical() + "' is not numeric");
    return;
  }
  if (ordering)
    throw Error(ErrorCode::DatatypeMismatch,
                "comparator " + std::string(comparator_symbol(f.comparator)) +
                    " requires a numeric datatype");
  if (vt != dt)
    throw Error(ErrorCode::DatatypeMismatch,
                "filter value datatype " + std::string(datatype_name(vt)) +
                    " does not match node datatype " + std::string(datatype_name(dt)));
}

NodeId next_id(const PathQuery& q) {
  NodeId max = 0;
  for (const auto& n : q.nodes) max = std::max(max, n.id);
  return q.nodes.empty() ? 0 : max + 1;
}

}  // namespace

void validate(const SchemaIndex& schema, const SubclassClosure& closure, const PathQuery& q) {
  if (q.nodes.empty()) throw Error(ErrorCode::InvalidArgument, "query has no nodes");
  if (!q.root().is_class()) throw Error(ErrorCode::TypeMismatch, "the root node must be a class");
  std::set<NodeId> ids;
  for (const auto& n : q.nodes) {
    if (!ids.insert(n.id).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate node id " + std::to_string(n.id));
    if (n.is_class()) schema.class_info(n.class_iri());
    if (n.selection) {
      if (!n.is_class())
        throw Error(ErrorCode::TypeMismatch, "instance selections apply to class nodes only");
      if (n.selection->instances.empty())
        throw Error(ErrorCode::InvalidArgument, "instance selection must be non-empty");
    }
    if (n.filter) check_filter(n, *n.filter);
  }
  if (q.edges.size() + 1 != q.nodes.size())
    throw Error(ErrorCode::InvalidArgument, "query is not a tree");
  std::set<NodeId> has_parent;
  for (const auto& e : q.edges) {
    if (!ids.count(e.from) || !ids.count(e.to))
      throw Error(ErrorCode::UnknownNode, "edge references a missing node");
    if (e.to == q.root().id || !has_parent.insert(e.to).second)
      throw Error(ErrorCode::InvalidArgument, "query is not a tree");
  }
  // Connectivity from the root.
  std::set<NodeId> seen{q.root().id};
  std::vector<NodeId> frontier{q.root().id};
  while (!frontier.empty()) {
    const NodeId v = frontier.back();
    frontier.pop_back();
    for (const auto* e : q.child_edges(v))
      if (seen.insert(e->to).second) frontier.push_back(e->to);
  }
  if (seen.size() != q.nodes.size())
    throw Error(ErrorCode::InvalidArgument, "query is not connected");
  for (const auto& e : q.edges) check_edge(schema, closure, q.node(e.from), e, q.node(e.to));
}

PathQuery new_query(const KnowledgeBase& kb, const NodeType& root) {
  PathQuery q;
  q.nodes.push_back(QueryNode{0, root, std::nullopt, std::nullopt});
  validate(kb.schema(), kb.closure(), q);
  return q;
}

PathQuery add_step(const KnowledgeBase& kb, const PathQuery& q, NodeId from, const Iri& property,
                   Direction direction, const NodeType& target) {
  const QueryNode& parent = q.node(from);
  QueryNode child{next_id(q), target, std::nullopt, std::nullopt};
  QueryEdge edge{from, property, child.id, direction};
  if (child.is_class()) kb.schema().class_info(child.class_iri());
  check_edge(kb.schema(), kb.closure(), parent, edge, child);
  PathQuery out = q;
  out.nodes.push_back(std::move(child));
  out.edges.push_back(std::move(edge));
  return out;
}

PathQuery set_instance_selection(const KnowledgeBase& kb, const PathQuery& q, NodeId node_id,
                                 SelectionOp op, const std::set<Iri>& instances) {
  const QueryNode& node = q.node(node_id);
  if (!node.is_class())
    throw Error(ErrorCode::TypeMismatch, "instance selections apply to class nodes only");
  if (instances.empty())
    throw Error(ErrorCode::InvalidArgument, "instance selection must be non-empty");
  const auto& admitted = kb.closure().descendants(node.class_iri());
  const GraphRefs graphs = kb.select(kAllDatasets);
  std::vector<std::string> offenders;
  for (const auto& inst : instances) {
    const auto types = asserted_types(Term(inst), graphs);
    const bool ok = std::any_of(types.begin(), types.end(),
                                [&](const Iri& t) { return admitted.count(t) != 0; });
    if (!ok) offenders.push_back("<" + inst.str() + ">");
  }
  if (!offenders.empty()) {
    std::string msg = "instances not typed under " + describe(kb.schema(), node.type) + ":";
    for (const auto& o : offenders) msg += " " + o;
    throw Error(ErrorCode::TypeMismatch, msg);
  }
  PathQuery out = q;
  for (auto& n : out.nodes)
    if (n.id == node_id) n.selection = InstanceSelection{op, instances};
  return out;
}

PathQuery add_literal_filter(const KnowledgeBase& kb, const PathQuery& q, NodeId node_id,
                             Comparator comparator, const Literal& value) {
  (void)kb;
  const QueryNode& node = q.node(node_id);
  Filter f{comparator, value};
  check_filter(node, f);
  PathQuery out = q;
  for (auto& n : out.nodes)
    if (n.id == node_id) n.filter = f;
  return out;
}

PathQuery remove_node(const PathQuery& q, NodeId node_id) {
  q.node(node_id);
  if (node_id == q.root().id)
    throw Error(ErrorCode::NonLeafRemoval, "the root node cannot be removed");
  if (!q.child_edges(node_id).empty())
    throw Error(ErrorCode::NonLeafRemoval,
                "node " + std::to_string(node_id) + " has dependent nodes; remove leaves first");
  PathQuery out = q;
  std::erase_if(out.nodes, [&](const QueryNode& n) { return n.id == node_id; });
  std::erase_if(out.edges, [&](const QueryEdge& e) { return e.to == node_id; });
  return out;
}

PathQuery with_dataset(const PathQuery& q, std::string dataset) {
  PathQuery out = q;
  out.dataset = std::move(dataset);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form
//
//   canonical := "pathquery/1 dataset=" ID " " node
//   node      := "(" type [" " selection] [" " filter] {" " edge} ")"
//   type      := "<" IRI ">" | "^" DATATYPE
//   selection := ("any-of" | "none-of") "{" "<" IRI ">" {" <" IRI ">"} "}"
//   filter    := "?" CMP " " LITERAL          (N-Triples rendering)
//   edge      := ("->" | "<-") "<" IRI "> " node

namespace {

std::string type_token(const NodeType& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return "<" + iri->str() + ">";
  return "^" + std::string(datatype_name(std::get<Datatype>(t)));
}

std::string canonical_node(const PathQuery& q, const QueryNode& n) {
  std::string out = "(" + type_token(n.type);
  if (n.selection) {
    out += " ";
    out += selection_op_name(n.selection->op);
    out += "{";
    bool first = true;
    for (const auto& i : n.selection->instances) {
      if (!first) out += " ";
      first = false;
      out += "<" + i.str() + ">";
    }
    out += "}";
  }
  if (n.filter) {
    out += " ?";
    out += comparator_symbol(n.filter->comparator);
    out += " " + Term(n.filter->value).to_string();
  }
  using Keyed = std::tuple<std::string, int, std::string, std::string>;
  std::vector<Keyed> children;
  for (const auto* e : q.child_edges(n.id)) {
    const QueryNode& child = q.node(e->to);
    std::string text = (e->direction == Direction::Forward ? "->" : "<-");
    text += "<" + e->property.str() + "> " + canonical_node(q, child);
    children.emplace_back(e->property.str(), static_cast<int>(e->direction),
                          type_token(child.type), std::move(text));
  }
  std::sort(children.begin(), children.end());
  for (const auto& c : children) out += " " + std::get<3>(c);
  out += ")";
  return out;
}

class CanonicalReader {
 public:
  CanonicalReader(std::string_view text, const SchemaIndex& schema)
      : text_(text), schema_(schema) {}

  PathQuery read() {
    PathQuery q;
    expect("pathquery/1 dataset=");
    const auto end = text_.find(' ', pos_);
    if (end == std::string_view::npos || end == pos_) fail("expected dataset id");
    q.dataset = std::string(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    node(q, std::nullopt, {}, Direction::Forward);
    if (pos_ != text_.size()) fail("trailing characters");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ErrorCode::GrammarError, msg, 1, pos_ + 1);
  }

  void expect(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) fail("expected '" + std::string(lit) + "'");
    pos_ += lit.size();
  }

  bool accept(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  Iri iri() {
    expect("<");
    const auto end = text_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string body(text_.substr(pos_, end - pos_));
    if (!is_valid_iri(body)) fail("malformed IRI");
    pos_ = end + 1;
    return Iri(std::move(body));
  }

  void node(PathQuery& q, std::optional<NodeId> parent, const Iri& property, Direction dir) {
    expect("(");
    QueryNode n;
    n.id = static_cast<NodeId>(q.nodes.size());
    if (accept("^")) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      auto dt = datatype_from_name(text_.substr(pos_, end - pos_));
      if (!dt) fail("unknown datatype");
      pos_ = end;
      n.type = *dt;
    } else {
      Iri cls = iri();
      if (!schema_.has_class(cls))
        throw Error(ErrorCode::UnknownSymbol, "unknown class <" + cls.str() + ">");
      n.type = cls;
    }
    std::optional<SelectionOp> op;
    if (accept(" any-of{")) op = SelectionOp::AnyOf;
    else if (accept(" none-of{")) op = SelectionOp::NoneOf;
    if (op) {
      InstanceSelection sel{*op, {}};
      sel.instances.insert(iri());
      while (accept(" ")) sel.instances.insert(iri());
      expect("}");
      n.selection = std::move(sel);
    }
    if (accept(" ?")) {
      const auto sp = text_.find(' ', pos_);
      if (sp == std::string_view::npos) fail("expected comparator");
      auto cmp = parse_comparator(text_.substr(pos_, sp - pos_));
      if (!cmp) fail("unknown comparator");
      pos_ = sp + 1;
      n.filter = Filter{*cmp, literal()};
    }
    const NodeId id = n.id;
    q.nodes.push_back(std::move(n));
    if (parent) q.edges.push_back(QueryEdge{*parent, property, id, dir});
    while (accept(" ")) {
      Direction d;
      if (accept("->")) d = Direction::Forward;
      else if (accept("<-")) d = Direction::Inverse;
      else fail("expected edge");
      Iri p = iri();
      if (!schema_.find_property(p))
        throw Error(ErrorCode::UnknownSymbol, "unknown property <" + p.str() + ">");
      expect(" ");
      node(q, id, p, d);
    }
    expect(")");
  }

  Literal literal() {
    expect("\"");
    std::string lex;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated literal");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': lex += '\n'; break;
          case 'r': lex += '\r'; break;
          case 't': lex += '\t'; break;
          default: lex += e;
        }
        continue;
      }
      lex += c;
    }
    expect("^^");
    Iri dt_iri = iri();
    auto dt = datatype_from_iri(dt_iri);
    if (!dt) fail("unsupported datatype");
    try {
      return Literal(std::move(lex), *dt);
    } catch (const Error&) {
      fail("invalid literal");
    }
  }

  std::string_view text_;
  const SchemaIndex& schema_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string canonicalize(const PathQuery& q) {
  return "pathquery/1 dataset=" + q.dataset + " " + canonical_node(q, q.root());
}

PathQuery parse_canonical(std::string_view text, const SchemaIndex& schema,
                          const SubclassClosure& closure) {
  PathQuery q = CanonicalReader(text, schema).read();
  validate(schema, closure, q);
  return q;
}

const PathQuery& QueryHistory::undo() {
  if (states_.size() < 2) throw Error(ErrorCode::NothingToUndo, "nothing to undo");
  states_.pop_back();
  return states_.back();
}

Formulation::Formulation(KnowledgeBasePtr kb, const NodeType& root)
    : kb_(std::move(kb)), history_(new_query(*kb_, root)) {}

const PathQuery& Formulation::add_step(NodeId from, const Iri& property, Direction direction,
                                       const NodeType& target) {
  history_.push(ontoquery::add_step(*kb_, current(), from, property, direction, target));
  return current();
}

const PathQuery& Formulation::set_instance_selection(NodeId node, SelectionOp op,
                                                     const std::set<Iri>& instances) {
  history_.push(ontoquery::set_instance_selection(*kb_, current(), node, op, instances));
  return current();
}

const PathQuery& Formulation::add_literal_filter(NodeId node, Comparator comparator,
                                                 const Literal& value) {
  history_.push(ontoquery::add_literal_filter(*kb_, current(), node, comparator, value));
  return current();
}

const PathQuery& Formulation::remove_node(NodeId node) {
  history_.push(ontoquery::remove_node(current(), node));
  return current();
}

}  // namespace ontoquery
