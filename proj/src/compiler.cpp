#include "ontoquery/compiler.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

constexpr std::string_view kDatasetIriPrefix = "urn:ontoquery:dataset:";

std::string node_label(const PathQuery& q, const QueryNode& n, const SchemaIndex& schema) {
  if (n.is_class()) return schema.class_info(n.class_iri()).label;
  if (const auto* e = q.parent_edge(n.id)) return schema.property_info(e->property).label;
  return std::string(datatype_name(n.datatype()));
}

std::string variable_label(const QueryNode& n, const SchemaIndex& schema) {
  if (n.is_class()) return schema.class_info(n.class_iri()).label;
  return std::string(datatype_name(n.datatype()));
}

}  // namespace

EvaluationPlan compile(const PathQuery& q, const SchemaIndex& schema,
                       const SubclassClosure& closure) {
  validate(schema, closure, q);
  EvaluationPlan plan;
  plan.dataset = q.dataset;

  auto node_steps = [&](const QueryNode& n) {
    if (n.selection)
      plan.steps.emplace_back(InstanceRestrict{n.id, n.selection->op, n.selection->instances});
    if (n.filter) plan.steps.emplace_back(FilterApply{n.id, *n.filter});
  };
  std::function<void(const QueryNode&)> visit = [&](const QueryNode& parent) {
    for (const auto* e : q.child_edges(parent.id)) {
      const QueryNode& child = q.node(e->to);
      if (child.is_class())
        plan.steps.emplace_back(ExtendedTypeScan{child.id, child.class_iri()});
      else
        plan.steps.emplace_back(LiteralBind{child.id, e->property, parent.id, child.datatype()});
      plan.steps.emplace_back(EdgeJoin{*e});
      node_steps(child);
      visit(child);
    }
  };

  const QueryNode& root = q.root();
  plan.steps.emplace_back(ExtendedTypeScan{root.id, root.class_iri()});
  node_steps(root);
  visit(root);

  for (const auto& n : q.nodes) {
    const QueryEdge* e = q.parent_edge(n.id);
    plan.columns.push_back(OutputColumn{n.id, node_label(q, n, schema), n.type,
                                        e ? std::optional<Iri>(e->property) : std::nullopt});
  }
  return plan;
}

std::string variable_name(std::string_view label, NodeId id) {
  std::string snake;
  bool gap = false;
  for (char ch : label) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      if (gap && !snake.empty()) snake += '_';
      gap = false;
      snake += static_cast<char>(std::tolower(c));
    } else {
      gap = true;
    }
  }
  return "any_" + snake + std::to_string(id + 1);
}

// ---------------------------------------------------------------------------
// Emission

SparqlText emit_sparql(const PathQuery& q, const SchemaIndex& schema) {
  SparqlText out;
  for (const auto& n : q.nodes) out.variables[n.id] = variable_name(variable_label(n, schema), n.id);
  auto var = [&](NodeId id) { return "?" + out.variables.at(id); };

  std::string body;
  auto line = [&](const std::string& s) { body += "  " + s + "\n"; };
  std::function<void(const QueryNode&)> visit = [&](const QueryNode& n) {
    if (n.is_class()) {
      line(var(n.id) + " rdf:type <" + n.class_iri().str() + "> .");
    } else {
      line("FILTER (datatype(" + var(n.id) + ") = <" + datatype_iri(n.datatype()).str() + ">)");
    }
    if (n.selection) {
      std::string list;
      for (const auto& i : n.selection->instances) {
        if (!list.empty()) list += n.selection->op == SelectionOp::AnyOf ? " " : ", ";
        list += "<" + i.str() + ">";
      }
      if (n.selection->op == SelectionOp::AnyOf)
        line("VALUES " + var(n.id) + " { " + list + " }");
      else
        line("FILTER (" + var(n.id) + " NOT IN (" + list + "))");
    }
    if (n.filter)
      line("FILTER (" + var(n.id) + " " + std::string(comparator_symbol(n.filter->comparator)) +
           " " + Term(n.filter->value).to_string() + ")");
    for (const auto* e : q.child_edges(n.id)) {
      const std::string p = "<" + e->property.str() + ">";
      if (e->direction == Direction::Forward)
        line(var(e->from) + " " + p + " " + var(e->to) + " .");
      else
        line(var(e->to) + " " + p + " " + var(e->from) + " .");
      visit(q.node(e->to));
    }
  };
  visit(q.root());

  std::string& t = out.text;
  t += "# ontoquery query-text/1 (rdf:type atoms are subclass-extended)\n";
  t += "PREFIX rdf: <" + std::string(vocab::kRdf) + ">\n";
  t += "SELECT";
  for (const auto& n : q.nodes) t += " " + var(n.id);
  t += "\nFROM <" + std::string(kDatasetIriPrefix) + q.dataset + ">\n";
  t += "WHERE {\n" + body + "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class QTok { End, Var, IriRef, PName, Word, String, Number, Punct, Cmp, Caret2 };

struct QToken {
  QTok kind = QTok::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

class QueryLexer {
 public:
  explicit QueryLexer(std::string_view src) : src_(src) {}

  QToken next() {
    skip();
    QToken t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (c == '?') {
      bump();
      while (pos_ < src_.size() && (std::isalnum(u(src_[pos_])) || src_[pos_] == '_'))
        t.text += take();
      if (t.text.empty()) fail(t, "empty variable name");
      t.kind = QTok::Var;
      return t;
    }
    if (c == '<') {
      // IRI when a '>' closes it before any whitespace; otherwise a comparator.
      std::size_t end = pos_ + 1;
      while (end < src_.size() && src_[end] != '>' && !std::isspace(u(src_[end]))) ++end;
      if (end < src_.size() && src_[end] == '>' && end > pos_ + 1 && src_[pos_ + 1] != '=') {
        bump();
        while (src_[pos_] != '>') t.text += take();
        bump();
        t.kind = QTok::IriRef;
        return t;
      }
      bump();
      t.kind = QTok::Cmp;
      t.text = "<";
      if (pos_ < src_.size() && src_[pos_] == '=') t.text += take();
      return t;
    }
    if (c == '>' || c == '=' || c == '!') {
      t.text += take();
      if (pos_ < src_.size() && src_[pos_] == '=') t.text += take();
      if (t.text == "!") fail(t, "expected '!='");
      t.kind = QTok::Cmp;
      return t;
    }
    if (c == '^') {
      bump();
      if (pos_ >= src_.size() || src_[pos_] != '^') fail(t, "expected '^^'");
      bump();
      t.kind = QTok::Caret2;
      return t;
    }
    if (c == '{' || c == '}' || c == '(' || c == ')' || c == '.' || c == ',') {
      t.text += take();
      t.kind = QTok::Punct;
      return t;
    }
    if (c == '"') {
      bump();
      while (true) {
        if (pos_ >= src_.size() || src_[pos_] == '\n') fail(t, "unterminated string");
        char ch = take();
        if (ch == '"') break;
        if (ch == '\\') {
          if (pos_ >= src_.size()) fail(t, "unterminated escape");
          const char e = take();
          switch (e) {
            case 'n': t.text += '\n'; break;
            case 'r': t.text += '\r'; break;
            case 't': t.text += '\t'; break;
            case '"': t.text += '"'; break;
            case '\\': t.text += '\\'; break;
            default: fail(t, "unsupported escape");
          }
          continue;
        }
        t.text += ch;
      }
      t.kind = QTok::String;
      return t;
    }
    if (std::isdigit(u(c)) || c == '+' || c == '-') {
      t.text += take();
      while (pos_ < src_.size() && (std::isdigit(u(src_[pos_])) || src_[pos_] == '.')) {
        if (src_[pos_] == '.' &&
            (pos_ + 1 >= src_.size() || !std::isdigit(u(src_[pos_ + 1]))))
          break;
        t.text += take();
      }
      t.kind = QTok::Number;
      return t;
    }
    if (std::isalpha(u(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(u(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '-' ||
              src_[pos_] == ':'))
        t.text += take();
      t.kind = t.text.find(':') != std::string::npos ? QTok::PName : QTok::Word;
      return t;
    }
    fail(t, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] static void fail(const QToken& at, const std::string& msg) {
    throw ParseError(ErrorCode::GrammarError, msg, at.line, at.column);
  }

 private:
  static unsigned char u(char c) { return static_cast<unsigned char>(c); }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  char take() {
    const char c = src_[pos_];
    bump();
    return c;
  }
  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(u(src_[pos_]))) {
        bump();
      } else if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct PatternEdge {
  std::string subject, object;
  Iri property;
};

class QueryTextParser {
 public:
  QueryTextParser(std::string_view text, const SchemaIndex& schema)
      : lex_(text), schema_(schema) {
    cur_ = lex_.next();
  }

  PathQuery parse() {
    if (cur_.kind == QTok::End) fail("empty query text");
    while (is_word("PREFIX")) prefix();
    if (!is_word("SELECT")) fail("expected SELECT");
    shift();
    while (cur_.kind == QTok::Var) {
      if (std::find(select_.begin(), select_.end(), cur_.text) != select_.end())
        fail("duplicate variable ?" + cur_.text);
      select_.push_back(cur_.text);
      shift();
    }
    if (select_.empty()) fail("SELECT needs at least one variable");
    std::string dataset(kAllDatasets);
    if (is_word("FROM")) {
      shift();
      if (cur_.kind != QTok::IriRef || cur_.text.rfind(kDatasetIriPrefix, 0) != 0)
        fail("expected dataset IRI <" + std::string(kDatasetIriPrefix) + "...>");
      dataset = cur_.text.substr(kDatasetIriPrefix.size());
      if (dataset.empty()) fail("empty dataset id");
      shift();
    }
    if (!is_word("WHERE")) fail("expected WHERE");
    shift();
    expect_punct("{");
    where_token_ = cur_;
    while (!is_punct("}")) pattern();
    shift();
    if (cur_.kind != QTok::End) fail("unexpected text after '}'");
    dataset_ = std::move(dataset);
    return assemble();
  }

 private:
  void shift() { cur_ = lex_.next(); }
  [[noreturn]] void fail(const std::string& msg) const { QueryLexer::fail(cur_, msg); }
  bool is_word(std::string_view w) const { return cur_.kind == QTok::Word && cur_.text == w; }
  bool is_punct(std::string_view p) const { return cur_.kind == QTok::Punct && cur_.text == p; }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    shift();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected " + std::string(w));
    shift();
  }

  void prefix() {
    shift();
    if (cur_.kind != QTok::PName || cur_.text.back() != ':') fail("expected prefix name");
    std::string name = cur_.text.substr(0, cur_.text.size() - 1);
    shift();
    if (cur_.kind != QTok::IriRef) fail("expected prefix IRI");
    prefixes_[name] = cur_.text;
    shift();
  }

  Iri iri_ref() {
    std::string full;
    if (cur_.kind == QTok::IriRef) {
      full = cur_.text;
    } else if (cur_.kind == QTok::PName) {
      const auto colon = cur_.text.find(':');
      auto it = prefixes_.find(cur_.text.substr(0, colon));
      if (it == prefixes_.end()) fail("unresolved prefix in '" + cur_.text + "'");
      full = it->second + cur_.text.substr(colon + 1);
    } else {
      fail("expected IRI");
    }
    if (!is_valid_iri(full)) fail("malformed IRI <" + full + ">");
    shift();
    return Iri(std::move(full));
  }

  std::string var() {
    if (cur_.kind != QTok::Var) fail("expected variable");
    std::string v = cur_.text;
    if (std::find(select_.begin(), select_.end(), v) == select_.end())
      fail("variable ?" + v + " is not selected");
    shift();
    return v;
  }

  void pattern() {
    if (is_word("VALUES")) {
      shift();
      const std::string v = var();
      expect_punct("{");
      std::set<Iri> values;
      while (!is_punct("}")) values.insert(iri_ref());
      shift();
      if (values.empty()) fail("VALUES needs at least one IRI");
      set_selection(v, SelectionOp::AnyOf, std::move(values));
      return;
    }
    if (is_word("FILTER")) {
      shift();
      filter();
      return;
    }
    const QToken at = cur_;
    const std::string s = var();
    if (is_word("a") || (cur_.kind == QTok::PName && cur_.text == "rdf:type") ||
        (cur_.kind == QTok::IriRef && cur_.text == vocab::rdf_type().str())) {
      shift();
      Iri cls = iri_ref();
      if (!schema_.has_class(cls))
        throw Error(ErrorCode::UnknownSymbol, "unknown class <" + cls.str() + ">");
      if (types_.count(s)) QueryLexer::fail(at, "second type for ?" + s);
      types_[s] = cls;
    } else {
      Iri p = iri_ref();
      if (!schema_.find_property(p))
        throw Error(ErrorCode::UnknownSymbol, "unknown property <" + p.str() + ">");
      const std::string o = var();
      edges_.push_back(PatternEdge{s, o, std::move(p)});
    }
    expect_punct(".");
  }

  void filter() {
    expect_punct("(");
    if (is_word("datatype")) {
      shift();
      expect_punct("(");
      const std::string v = var();
      expect_punct(")");
      if (cur_.kind != QTok::Cmp || cur_.text != "=") fail("expected '='");
      shift();
      Iri dt_iri = iri_ref();
      auto dt = datatype_from_iri(dt_iri);
      if (!dt) throw Error(ErrorCode::UnknownSymbol, "unsupported datatype <" + dt_iri.str() + ">");
      if (types_.count(v) || datatypes_.count(v)) fail("second type for ?" + v);
      datatypes_[v] = *dt;
      expect_punct(")");
      return;
    }
    const std::string v = var();
    if (is_word("NOT")) {
      shift();
      expect_word("IN");
      expect_punct("(");
      std::set<Iri> values{iri_ref()};
      while (is_punct(",")) {
        shift();
        values.insert(iri_ref());
      }
      expect_punct(")");
      expect_punct(")");
      set_selection(v, SelectionOp::NoneOf, std::move(values));
      return;
    }
    if (cur_.kind != QTok::Cmp) fail("expected comparator");
    auto cmp = parse_comparator(cur_.text);
    if (!cmp) fail("unknown comparator");
    shift();
    Literal value = literal();
    expect_punct(")");
    if (filters_.count(v)) fail("second filter for ?" + v);
    filters_.emplace(v, Filter{*cmp, std::move(value)});
  }

  Literal literal() {
    try {
      if (cur_.kind == QTok::Number) {
        const bool dec = cur_.text.find('.') != std::string::npos;
        Literal l(cur_.text, dec ? Datatype::Decimal : Datatype::Integer);
        shift();
        return l;
      }
      if (cur_.kind == QTok::Word && (cur_.text == "true" || cur_.text == "false")) {
        Literal l(cur_.text, Datatype::Boolean);
        shift();
        return l;
      }
      if (cur_.kind != QTok::String) fail("expected literal");
      std::string lex = cur_.text;
      shift();
      if (cur_.kind != QTok::Caret2) return Literal::string(std::move(lex));
      shift();
      const QToken at = cur_;
      Iri dt_iri = iri_ref();
      auto dt = datatype_from_iri(dt_iri);
      if (!dt) QueryLexer::fail(at, "unsupported datatype <" + dt_iri.str() + ">");
      return Literal(std::move(lex), *dt);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  void set_selection(const std::string& v, SelectionOp op, std::set<Iri> values) {
    if (selections_.count(v)) fail("second instance selection for ?" + v);
    selections_.emplace(v, InstanceSelection{op, std::move(values)});
  }

  PathQuery assemble() {
    PathQuery q;
    q.dataset = dataset_;
    std::map<std::string, NodeId> id_of;
    for (std::size_t i = 0; i < select_.size(); ++i) {
      const std::string& v = select_[i];
      QueryNode n;
      n.id = static_cast<NodeId>(i);
      if (auto t = types_.find(v); t != types_.end()) {
        n.type = t->second;
      } else if (auto d = datatypes_.find(v); d != datatypes_.end()) {
        n.type = d->second;
      } else {
        QueryLexer::fail(where_token_, "no type atom for ?" + v);
      }
      if (auto s = selections_.find(v); s != selections_.end()) n.selection = s->second;
      if (auto f = filters_.find(v); f != filters_.end()) n.filter = f->second;
      id_of[v] = n.id;
      q.nodes.push_back(std::move(n));
    }
    // Orient the undirected pattern edges away from the root.
    std::vector<bool> used(edges_.size(), false);
    std::vector<bool> reached(select_.size(), false);
    reached[0] = true;
    std::vector<NodeId> frontier{0};
    while (!frontier.empty()) {
      const NodeId at = frontier.front();
      frontier.erase(frontier.begin());
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (used[i]) continue;
        const NodeId s = id_of.at(edges_[i].subject), o = id_of.at(edges_[i].object);
        if (s != at && o != at) continue;
        const NodeId other = s == at ? o : s;
        if (reached[other]) QueryLexer::fail(where_token_, "query patterns contain a cycle");
        used[i] = true;
        reached[other] = true;
        q.edges.push_back(QueryEdge{at, edges_[i].property, other,
                                    s == at ? Direction::Forward : Direction::Inverse});
        frontier.push_back(other);
      }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end())
      QueryLexer::fail(where_token_, "query patterns are not connected");
    std::sort(q.edges.begin(), q.edges.end(),
              [](const QueryEdge& a, const QueryEdge& b) { return a.to < b.to; });
    return q;
  }

  QueryLexer lex_;
  QToken cur_;
  QToken where_token_;
  const SchemaIndex& schema_;
  std::map<std::string, std::string> prefixes_;
  std::vector<std::string> select_;
  std::string dataset_;
  std::map<std::string, Iri> types_;
  std::map<std::string, Datatype> datatypes_;
  std::map<std::string, InstanceSelection> selections_;
  std::map<std::string, Filter> filters_;
  std::vector<PatternEdge> edges_;
};

}  // namespace

PathQuery parse_query_text(std::string_view text, const SchemaIndex& schema,
                           const SubclassClosure& closure) {
  PathQuery q = QueryTextParser(text, schema).parse();
  validate(schema, closure, q);
  return q;
}

}  // namespace ontoquery
