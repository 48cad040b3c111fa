#include "ontoquery/knowledge_base.hpp"

#include <atomic>
#include <set>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

std::uint64_t next_version() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

void check_unique_ids(const std::vector<Dataset>& datasets) {
  std::set<std::string> seen;
  for (const auto& d : datasets) {
    if (d.id == kAllDatasets)
      throw Error(ErrorCode::ConfigError, "dataset id 'all' is reserved");
    if (!seen.insert(d.id).second)
      throw Error(ErrorCode::ConfigError, "duplicate dataset id '" + d.id + "'");
  }
}

}  // namespace

KnowledgeBase::KnowledgeBase(Graph schema_graph, std::vector<Dataset> datasets,
                             const AnnotationVocabulary& annotations,
                             Diagnostics load_diagnostics)
    : schema_graph_(std::move(schema_graph)),
      datasets_(std::move(datasets)),
      diagnostics_(std::move(load_diagnostics)),
      version_(next_version()) {
  check_unique_ids(datasets_);
  schema_ = SchemaIndex::build(schema_graph_, annotations, &diagnostics_);
  closure_ = SubclassClosure::compute(schema_, &diagnostics_);
}

KnowledgeBase::KnowledgeBase(SchemaIndex schema, std::vector<Dataset> datasets)
    : schema_(std::move(schema)), datasets_(std::move(datasets)), version_(next_version()) {
  check_unique_ids(datasets_);
  closure_ = SubclassClosure::compute(schema_, &diagnostics_);
}

const Dataset* KnowledgeBase::find_dataset(std::string_view id) const {
  for (const auto& d : datasets_)
    if (d.id == id) return &d;
  return nullptr;
}

GraphRefs KnowledgeBase::select(std::string_view selector) const {
  GraphRefs out;
  if (selector == kAllDatasets) {
    for (const auto& d : datasets_) out.emplace_back(d.graph);
    return out;
  }
  const Dataset* d = find_dataset(selector);
  if (d == nullptr)
    throw Error(ErrorCode::UnknownDataset, "unknown dataset '" + std::string(selector) + "'");
  out.emplace_back(d->graph);
  return out;
}

std::string KnowledgeBase::display_label(const Term& term) const {
  if (term.is_literal()) return term.literal().lexical();
  if (term.is_blank()) return "_:" + term.blank().label;
  std::optional<std::string> best;
  auto scan = [&](const Graph& g) {
    g.for_each_match({term, vocab::rdfs_label(), std::nullopt}, [&](const Triple& t) {
      if (!t.object.is_literal()) return;
      const auto& lex = t.object.literal().lexical();
      if (!best || lex < *best) best = lex;
    });
  };
  for (const auto& d : datasets_) scan(d.graph);
  if (!best) {
    if (const auto* c = schema_.find_class(term.iri())) return c->label;
    if (const auto* p = schema_.find_property(term.iri())) return p->label;
  }
  return best ? *best : term.iri().local_name();
}

}  // namespace ontoquery
