#include "ontoquery/api.hpp"

#include <charconv>
#include <sstream>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

Json type_json(const NodeType& t, const SchemaIndex& schema) {
  if (const auto* iri = std::get_if<Iri>(&t))
    return {{"class", iri->str()}, {"label", schema.class_info(*iri).label}};
  return {{"datatype", std::string(datatype_name(std::get<Datatype>(t)))}};
}

std::string_view kind_name(PropertyKind k) { return k == PropertyKind::Object ? "object" : "data"; }

std::vector<std::string> iri_strings(const std::set<Iri>& s) {
  std::vector<std::string> out;
  for (const auto& i : s) out.push_back(i.str());
  return out;
}

[[noreturn]] void bad_request(const std::string& msg) {
  throw Error(ErrorCode::InvalidArgument, msg);
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) bad_request("request body must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    bad_request(std::string("malformed JSON body: ") + e.what());
  }
}

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad_request(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) bad_request(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

NodeId node_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_unsigned()) bad_request(std::string("field '") + name + "' must be a node id");
  return v.get<NodeId>();
}

Iri iri_value(const std::string& s) {
  if (!is_valid_iri(s)) throw Error(ErrorCode::MalformedIri, "malformed IRI '" + s + "'");
  return Iri(s);
}

NodeType node_type(const Json& j) {
  if (j.is_string()) return iri_value(j.get<std::string>());
  if (j.is_object()) {
    if (j.contains("class")) return iri_value(string_field(j, "class"));
    if (j.contains("datatype")) {
      auto dt = datatype_from_name(string_field(j, "datatype"));
      if (!dt) bad_request("unsupported datatype");
      return *dt;
    }
  }
  bad_request("node type must be a class IRI or {\"datatype\": name}");
}

std::size_t size_param(const ApiRequest& r, const std::string& name, std::size_t fallback) {
  auto it = r.params.find(name);
  if (it == r.params.end() || it->second.empty()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    bad_request("parameter '" + name + "' must be a non-negative integer");
  return v;
}

std::string param(const ApiRequest& r, const std::string& name) {
  auto it = r.params.find(name);
  if (it == r.params.end() || it->second.empty()) bad_request("missing parameter '" + name + "'");
  return it->second;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ApiResponse not_found_route(const ApiRequest& r) {
  return {404, {{"error", {{"code", "unknown-route"}, {"message", r.method + " " + r.path}}}}};
}

}  // namespace

Json to_json(const DatasetDescriptor& d) {
  return {{"id", d.id}, {"label", d.label}, {"triples", d.triples}};
}

Json to_json(const Annotation& a) {
  return {{"description", a.description ? Json(*a.description) : Json(nullptr)},
          {"alt_labels", a.alt_labels},
          {"properties", a.properties}};
}

Json to_json(const Suggestion& s) {
  return {{"iri", s.class_iri.str()},
          {"label", s.label},
          {"match", s.match_kind == MatchKind::Label ? "label" : "alt-label"},
          {"matched_text", s.matched_text},
          {"annotation", to_json(s.annotation)}};
}

Json to_json(const PropertyInfo& p) {
  return {{"iri", p.iri.str()},
          {"label", p.label},
          {"kind", kind_name(p.kind)},
          {"domains", iri_strings(p.domains)},
          {"ranges", iri_strings(p.ranges)},
          {"sequence", p.sequence}};
}

Json to_json(const SchemaPath& p, const SchemaIndex& schema) {
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back({{"from", s.from.str()},
                     {"property", s.property.str()},
                     {"property_label", schema.property_info(s.property).label},
                     {"direction", direction_name(s.direction)},
                     {"to", s.to.str()},
                     {"to_label", schema.class_info(s.to).label}});
  return {{"length", p.length()}, {"steps", std::move(steps)}};
}

Json to_json(const PathQuery& q, const SchemaIndex& schema) {
  Json nodes = Json::array();
  for (const auto& n : q.nodes) {
    Json j = {{"id", n.id}, {"type", type_json(n.type, schema)}};
    if (n.selection)
      j["selection"] = {{"op", selection_op_name(n.selection->op)},
                        {"instances", iri_strings(n.selection->instances)}};
    if (n.filter)
      j["filter"] = {{"comparator", comparator_symbol(n.filter->comparator)},
                     {"value", n.filter->value.lexical()},
                     {"datatype", datatype_name(n.filter->value.datatype())}};
    nodes.push_back(std::move(j));
  }
  Json edges = Json::array();
  for (const auto& e : q.edges)
    edges.push_back({{"from", e.from},
                     {"property", e.property.str()},
                     {"property_label", schema.property_info(e.property).label},
                     {"direction", direction_name(e.direction)},
                     {"to", e.to}});
  return {{"dataset", q.dataset},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"canonical", canonicalize(q)}};
}

Json to_json(const SparqlText& s) {
  Json vars = Json::object();
  for (const auto& [id, name] : s.variables) vars[std::to_string(id)] = name;
  return {{"text", s.text}, {"variables", std::move(vars)}};
}

Json to_json(const EnrichmentJob& job) {
  Json report = Json::array();
  for (const auto& r : job.report)
    report.push_back({{"row", r.row}, {"summary", r.summary}, {"score", r.score}});
  return {{"id", job.id},
          {"status", job_status_name(job.status)},
          {"column", job.column},
          {"rows", job.rows},
          {"report", std::move(report)},
          {"diagnostic", job.diagnostic ? Json(*job.diagnostic) : Json(nullptr)}};
}

Json table_json(const ResultTable& t, const KnowledgeBase& kb) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json cells = Json::array();
    for (const auto& v : row) cells.push_back({{"term", v.to_string()}, {"label", kb.display_label(v)}});
    rows.push_back(std::move(cells));
  }
  return {{"rows", std::move(rows)}, {"provenance", t.provenance}};
}

Json error_json(const std::exception& e) {
  Json err = {{"code", "internal"}, {"message", e.what()}};
  if (const auto* oe = dynamic_cast<const Error*>(&e)) err["code"] = code_name(oe->code());
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
  }
  return {{"error", std::move(err)}};
}

int http_status(const std::exception& e) noexcept {
  const auto* oe = dynamic_cast<const Error*>(&e);
  if (oe == nullptr) return 500;
  switch (classify(oe->code())) {
    case ErrorClass::Validation: return 400;
    case ErrorClass::NotFound: return 404;
    case ErrorClass::Io:
    case ErrorClass::Internal: return 500;
  }
  return 500;
}

ApiService::ApiService(std::shared_ptr<Deployment> deployment)
    : deployment_(std::move(deployment)), sessions_(deployment_->config().session_idle) {}

ApiResponse ApiService::handle(const ApiRequest& request) {
  try {
    return route(request);
  } catch (const std::exception& e) {
    return {http_status(e), error_json(e)};
  }
}

ApiResponse ApiService::route(const ApiRequest& r) {
  const KnowledgeBase& kb = *deployment_->knowledge_base();
  const SchemaIndex& schema = kb.schema();
  const SubclassClosure& closure = kb.closure();
  const DeploymentConfig& cfg = deployment_->config();
  const auto seg = split_path(r.path);
  const bool get = r.method == "GET", post = r.method == "POST";

  if (get && seg == std::vector<std::string>{"datasets"}) {
    Json list = Json::array();
    for (const auto& d : deployment_->list_datasets()) list.push_back(to_json(d));
    return {200, {{"datasets", std::move(list)}}};
  }

  if (get && seg == std::vector<std::string>{"suggest"}) {
    const std::size_t limit = size_param(r, "limit", cfg.suggestion_limit);
    Json list = Json::array();
    for (const auto& s : suggest_concepts(schema, closure, param(r, "q"), limit))
      list.push_back(to_json(s));
    return {200, {{"suggestions", std::move(list)}}};
  }

  // IRIs may contain '/', so the concept routes match on prefix and suffix.
  constexpr std::string_view kConcepts = "/concepts/";
  if (get && r.path.rfind(kConcepts, 0) == 0) {
    const std::string rest = r.path.substr(kConcepts.size());
    if (ends_with(rest, "/annotation")) {
      const Iri cls = iri_value(rest.substr(0, rest.size() - 11));
      return {200, {{"iri", cls.str()}, {"annotation", to_json(annotate(schema, closure, cls))}}};
    }
    if (ends_with(rest, "/relations")) {
      const Iri cls = iri_value(rest.substr(0, rest.size() - 10));
      auto dir_text = r.params.count("direction") ? r.params.at("direction") : "forward";
      auto dir = parse_direction(dir_text);
      if (!dir) bad_request("direction must be forward or inverse");
      schema.class_info(cls);
      Json list = Json::array();
      for (const auto& p : suggest_relations(schema, closure, cls, *dir)) {
        Json j = to_json(p);
        const auto targets = *dir == Direction::Forward ? forward_targets(schema, closure, cls, p.iri)
                                                        : inverse_targets(schema, p.iri);
        j["targets"] = iri_strings(targets);
        list.push_back(std::move(j));
      }
      return {200, {{"iri", cls.str()}, {"direction", direction_name(*dir)}, {"relations", std::move(list)}}};
    }
    return not_found_route(r);
  }

  if (get && seg == std::vector<std::string>{"paths"}) {
    const Iri from = iri_value(param(r, "from")), to = iri_value(param(r, "to"));
    const std::size_t max = size_param(r, "max", cfg.path_max_length);
    Json list = Json::array();
    for (const auto& p : discover_paths(schema, closure, from, to, max)) list.push_back(to_json(p, schema));
    return {200, {{"paths", std::move(list)}}};
  }

  if (!seg.empty() && seg[0] == "sessions") {
    if (post && seg.size() == 1) {
      const Json body = parse_body(r.body);
      const NodeType root = node_type(field(body, "root"));
      std::string dataset = body.contains("dataset") ? string_field(body, "dataset")
                                                     : std::string(kAllDatasets);
      auto s = sessions_.create(deployment_->knowledge_base(), root, std::move(dataset));
      std::lock_guard lock(s->mutex);
      return {201, {{"session", s->id}, {"query", to_json(s->formulation.current(), schema)}}};
    }
    if (seg.size() < 2) return not_found_route(r);
    auto s = sessions_.get(seg[1]);
    std::lock_guard lock(s->mutex);
    Formulation& f = s->formulation;
    auto query_reply = [&](int status = 200) {
      return ApiResponse{status, {{"session", s->id}, {"query", to_json(f.current(), schema)}}};
    };

    if (get && seg.size() == 2) return query_reply();
    if (r.method == "DELETE" && seg.size() == 2) {
      sessions_.erase(s->id);
      return {200, {{"session", s->id}, {"deleted", true}}};
    }
    if (post && seg.size() == 3 && seg[2] == "steps") {
      const Json body = parse_body(r.body);
      auto dir = parse_direction(body.contains("direction") ? string_field(body, "direction") : "forward");
      if (!dir) bad_request("direction must be forward or inverse");
      f.add_step(node_field(body, "from"), iri_value(string_field(body, "property")), *dir,
                 node_type(field(body, "target")));
      return query_reply();
    }
    if (post && seg.size() == 3 && seg[2] == "selection") {
      const Json body = parse_body(r.body);
      auto op = parse_selection_op(body.contains("op") ? string_field(body, "op") : "any-of");
      if (!op) bad_request("op must be any-of or none-of");
      const Json& list = field(body, "instances");
      if (!list.is_array()) bad_request("instances must be an array of IRIs");
      std::set<Iri> instances;
      for (const auto& i : list) {
        if (!i.is_string()) bad_request("instances must be an array of IRIs");
        instances.insert(iri_value(i.get<std::string>()));
      }
      f.set_instance_selection(node_field(body, "node"), *op, instances);
      return query_reply();
    }
    if (post && seg.size() == 3 && seg[2] == "filter") {
      const Json body = parse_body(r.body);
      const NodeId node = node_field(body, "node");
      auto cmp = parse_comparator(string_field(body, "comparator"));
      if (!cmp) bad_request("unknown comparator");
      const QueryNode& n = f.current().node(node);
      Datatype dt = n.is_class() ? Datatype::String : n.datatype();
      if (body.contains("datatype")) {
        auto d = datatype_from_name(string_field(body, "datatype"));
        if (!d) bad_request("unsupported datatype");
        dt = *d;
      }
      const Json& v = field(body, "value");
      std::string lex = v.is_string() ? v.get<std::string>() : v.dump();
      f.add_literal_filter(node, *cmp, Literal(std::move(lex), dt));
      return query_reply();
    }
    if (post && seg.size() == 3 && seg[2] == "undo") {
      f.undo();
      return query_reply();
    }
    if (r.method == "DELETE" && seg.size() == 4 && seg[2] == "nodes") {
      NodeId node = 0;
      auto [p, ec] = std::from_chars(seg[3].data(), seg[3].data() + seg[3].size(), node);
      if (ec != std::errc() || p != seg[3].data() + seg[3].size()) bad_request("invalid node id");
      f.remove_node(node);
      return query_reply();
    }
    if (get && seg.size() == 3 && seg[2] == "sparql")
      return {200, to_json(emit_sparql(f.current(), schema))};
    if (post && seg.size() == 3 && seg[2] == "execute") {
      std::string dataset = r.params.count("dataset") && !r.params.at("dataset").empty()
                                ? r.params.at("dataset")
                                : s->dataset;
      const PathQuery q = with_dataset(f.current(), dataset);
      CachedResult res = cached_execute(q, dataset, kb, deployment_->cache());
      PartitionedResults parts = partition_results(res.table, q, closure, kb.select(dataset));

      Json columns = Json::array();
      for (const auto& c : res.table.columns)
        columns.push_back({{"node", c.node},
                           {"label", c.label},
                           {"type", type_json(c.type, schema)},
                           {"via_property", c.via_property ? Json(c.via_property->str()) : Json(nullptr)}});
      Json specific = table_json(parts.specific, kb);
      Json general = table_json(parts.general, kb);
      Json witnesses = Json::array();
      for (const auto& w : parts.general_witness) {
        Json m = Json::object();
        for (const auto& [node, cls] : w)
          m[std::to_string(node)] = {{"iri", cls.str()}, {"label", schema.class_info(cls).label}};
        witnesses.push_back(std::move(m));
      }
      general["witnesses"] = std::move(witnesses);
      // Row ordinals into the unpartitioned table, which enrichment reports use.
      Json spec_ord = Json::array(), gen_ord = Json::array();
      std::size_t si = 0;
      for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
        if (si < parts.specific.rows.size() && parts.specific.rows[si] == res.table.rows[i]) {
          spec_ord.push_back(i);
          ++si;
        } else {
          gen_ord.push_back(i);
        }
      }
      specific["ordinals"] = std::move(spec_ord);
      general["ordinals"] = std::move(gen_ord);
      Json enrichable = Json::array();
      for (const auto& c : detect_enrichable_columns(res.table, schema))
        enrichable.push_back({{"column", c.column_index}, {"reason", c.reason}});
      return {200,
              {{"session", s->id},
               {"dataset", dataset},
               {"cache_hit", res.cache_hit},
               {"row_count", res.table.rows.size()},
               {"columns", std::move(columns)},
               {"specific", std::move(specific)},
               {"general", std::move(general)},
               {"enrichable", std::move(enrichable)}}};
    }
    return not_found_route(r);
  }

  if (!seg.empty() && seg[0] == "enrichments") {
    if (post && seg.size() == 1) {
      const Json body = parse_body(r.body);
      auto s = sessions_.get(string_field(body, "session"));
      PathQuery q;
      std::string dataset;
      {
        std::lock_guard lock(s->mutex);
        dataset = body.contains("dataset") ? string_field(body, "dataset") : s->dataset;
        q = with_dataset(s->formulation.current(), dataset);
      }
      const auto col = field(body, "column");
      if (!col.is_number_unsigned()) bad_request("column must be a column index");
      // A private copy: enrichment never touches the cached table.
      const ResultTable table = cached_execute(q, dataset, kb, deployment_->cache()).table;
      EnrichableColumn column{col.get<std::size_t>(), {}};
      auto job = deployment_->jobs().submit(column, table, schema, deployment_->alignment_service());
      return {202, {{"job", to_json(job)}}};
    }
    if (get && seg.size() == 2) return {200, {{"job", to_json(deployment_->jobs().poll(seg[1]))}}};
    return not_found_route(r);
  }

  return not_found_route(r);
}

}  // namespace ontoquery
