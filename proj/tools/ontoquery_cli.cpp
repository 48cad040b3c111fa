// ontoquery: serve, query, suggest, validate and paths over one deployment.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ontoquery/api.hpp"
#include "ontoquery/error.hpp"
#include "ontoquery/http_server.hpp"

using namespace ontoquery;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

/// Accepts a full IRI or an exact (case-insensitive) class label.
Iri resolve_class(const SchemaIndex& schema, const std::string& text) {
  if (is_valid_iri(text) && schema.has_class(Iri(text))) return Iri(text);
  const std::string needle = normalize_for_match(text);
  for (const auto& [iri, info] : schema.classes())
    if (normalize_for_match(info.label) == needle) return iri;
  throw Error(ErrorCode::UnknownClass, "no class with IRI or label '" + text + "'");
}

void print_diagnostics(const Diagnostics& diags) {
  for (const auto& d : diags)
    std::cout << (d.severity == Severity::Warning ? "warning" : "info") << " [" << d.source
              << "] " << d.code << ": " << d.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-guided path queries over RDF datasets"};
  app.require_subcommand(1);

  std::string config_path = "deployment.conf";
  app.add_option("-c,--config", config_path, "Deployment configuration file")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Start the HTTP API");
  std::string listen;
  serve->add_option("--listen", listen, "host:port (overrides the config)");
  bool quiet = false;
  serve->add_flag("--quiet", quiet, "Do not log requests");

  auto* query = app.add_subcommand("query", "Run query text and print the result table");
  std::string query_file = "-";
  std::string dataset;
  bool partition = false, raw_terms = false;
  query->add_option("file", query_file, "Query text file, or - for stdin")->capture_default_str();
  query->add_option("--dataset", dataset, "Dataset id or 'all' (default: the FROM clause)");
  query->add_flag("--partition", partition, "Print specific and general results separately");
  query->add_flag("--terms", raw_terms, "Print N-Triples terms instead of labels");

  auto* suggest = app.add_subcommand("suggest", "Suggest concepts for a typed prefix");
  std::string prefix;
  std::size_t limit = 0;
  suggest->add_option("prefix", prefix, "Typed text")->required();
  suggest->add_option("--limit", limit, "Maximum suggestions (default: config)");

  auto* validate = app.add_subcommand("validate", "Load every file and print diagnostics");

  auto* paths = app.add_subcommand("paths", "Discover relation paths between two concepts");
  std::string from, to;
  std::size_t max_length = 0;
  paths->add_option("from", from, "Start class IRI or label")->required();
  paths->add_option("to", to, "Target class IRI or label")->required();
  paths->add_option("--max", max_length, "Maximum path length (default: config)");

  CLI11_PARSE(app, argc, argv);

  try {
    const DeploymentConfig cfg = load_config(config_path);
    auto deployment = Deployment::load(cfg);
    const KnowledgeBase& kb = *deployment->knowledge_base();

    if (*serve) {
      ApiService api(deployment);
      HttpServer server(api, !quiet);
      const auto [host, port] = split_listen(listen.empty() ? cfg.listen : listen);
      const int bound = server.bind(host, port);
      std::cerr << "listening on " << host << ":" << bound << '\n';
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      g_server = nullptr;
      return kExitOk;
    }

    if (*query) {
      PathQuery q = parse_query_text(read_input(query_file), kb.schema(), kb.closure());
      if (!dataset.empty()) q = with_dataset(q, dataset);
      const EvaluationPlan plan = compile(q, kb.schema(), kb.closure());
      const ResultTable table = execute(plan, kb);
      const KnowledgeBase* labels = raw_terms ? nullptr : &kb;
      if (!partition) {
        std::cout << to_delimited(table, labels);
        return kExitOk;
      }
      const auto parts = partition_results(table, q, kb.closure(), kb.select(q.dataset));
      std::cout << "# specific (" << parts.specific.rows.size() << " rows)\n"
                << to_delimited(parts.specific, labels) << "# general (" << parts.general.rows.size()
                << " rows)\n"
                << to_delimited(parts.general, labels);
      for (std::size_t i = 0; i < parts.general_witness.size(); ++i)
        for (const auto& [node, cls] : parts.general_witness[i])
          std::cout << "# row " << i << ": " << table.columns[table.column_of(node)].label
                    << " admitted via " << kb.schema().class_info(cls).label << '\n';
      return kExitOk;
    }

    if (*suggest) {
      for (const auto& s : suggest_concepts(kb.schema(), kb.closure(), prefix,
                                            limit ? limit : cfg.suggestion_limit)) {
        std::cout << s.label << '\t' << s.class_iri.str();
        if (s.match_kind == MatchKind::AltLabel) std::cout << "\t(via " << s.matched_text << ")";
        std::cout << '\n';
      }
      return kExitOk;
    }

    if (*validate) {
      print_diagnostics(kb.diagnostics());
      std::cout << "schema: " << kb.schema_graph().size() << " triples, "
                << kb.schema().classes().size() << " classes, " << kb.schema().properties().size()
                << " properties\n";
      for (const auto& d : deployment->list_datasets())
        std::cout << "dataset " << d.id << ": " << d.triples << " triples\n";
      std::cout << "subclass cycles: " << kb.closure().cycles().size() << '\n';
      return kExitOk;
    }

    if (*paths) {
      const Iri a = resolve_class(kb.schema(), from), b = resolve_class(kb.schema(), to);
      for (const auto& p : discover_paths(kb.schema(), kb.closure(), a, b,
                                          max_length ? max_length : cfg.path_max_length)) {
        std::cout << kb.schema().class_info(a).label;
        for (const auto& s : p.steps)
          std::cout << (s.direction == Direction::Forward ? " -" : " <-")
                    << kb.schema().property_info(s.property).label
                    << (s.direction == Direction::Forward ? "-> " : "- ")
                    << kb.schema().class_info(s.to).label;
        std::cout << '\n';
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << code_name(e.code()) << "): " << e.what() << '\n';
    return classify(e.code()) == ErrorClass::Io ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
