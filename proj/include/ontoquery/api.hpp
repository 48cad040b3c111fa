#pragma once

#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "ontoquery/deployment.hpp"
#include "ontoquery/session.hpp"

namespace ontoquery {

using Json = nlohmann::json;

// Payload encodings (field names are documented in docs/api.md).
Json to_json(const DatasetDescriptor& d);
Json to_json(const Suggestion& s);
Json to_json(const Annotation& a);
Json to_json(const PropertyInfo& p);
Json to_json(const SchemaPath& p, const SchemaIndex& schema);
Json to_json(const PathQuery& q, const SchemaIndex& schema);
Json to_json(const SparqlText& s);
Json to_json(const EnrichmentJob& job);
Json error_json(const std::exception& e);
int http_status(const std::exception& e) noexcept;

/// Cells are {"term": N-Triples form, "label": display label}.
Json table_json(const ResultTable& t, const KnowledgeBase& kb);

struct ApiRequest {
  std::string method;  // GET, POST, DELETE
  std::string path;    // percent-decoded
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

/// Transport-independent router. Every route adapts one engine operation;
/// failures become {"error": {"code", "message"}} with 400/404/500.
class ApiService {
 public:
  explicit ApiService(std::shared_ptr<Deployment> deployment);

  ApiResponse handle(const ApiRequest& request);

  Deployment& deployment() noexcept { return *deployment_; }
  SessionManager& sessions() noexcept { return sessions_; }

 private:
  ApiResponse route(const ApiRequest& request);

  std::shared_ptr<Deployment> deployment_;
  SessionManager sessions_;
};

}  // namespace ontoquery
