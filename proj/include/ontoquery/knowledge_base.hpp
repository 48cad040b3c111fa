#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ontoquery/diagnostics.hpp"
#include "ontoquery/graph.hpp"
#include "ontoquery/reasoner.hpp"
#include "ontoquery/schema.hpp"

namespace ontoquery {

inline constexpr std::string_view kAllDatasets = "all";

struct Dataset {
  std::string id;
  std::string label;
  Graph graph;
};

/// Schema, its closure and the instance datasets, frozen together. Every
/// instance carries a process-unique version stamp; result caches key on it.
class KnowledgeBase {
 public:
  /// `load_diagnostics` (e.g. from the Turtle loader) lead the diagnostics list.
  KnowledgeBase(Graph schema_graph, std::vector<Dataset> datasets,
                const AnnotationVocabulary& annotations = {}, Diagnostics load_diagnostics = {});

  /// Convenience for generated schemas (tests, random instances).
  KnowledgeBase(SchemaIndex schema, std::vector<Dataset> datasets);

  const Graph& schema_graph() const noexcept { return schema_graph_; }
  const SchemaIndex& schema() const noexcept { return schema_; }
  const SubclassClosure& closure() const noexcept { return closure_; }
  const std::vector<Dataset>& datasets() const noexcept { return datasets_; }
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }
  std::uint64_t version() const noexcept { return version_; }

  const Dataset* find_dataset(std::string_view id) const;

  /// "all" selects every dataset. Throws Error(UnknownDataset).
  GraphRefs select(std::string_view selector) const;

  /// Human-facing rendering: rdfs:label from the datasets or schema when
  /// present, else the IRI local name, literal lexical form, or _:label.
  std::string display_label(const Term& term) const;

 private:
  Graph schema_graph_;
  SchemaIndex schema_;
  SubclassClosure closure_;
  std::vector<Dataset> datasets_;
  Diagnostics diagnostics_;
  std::uint64_t version_;
};

using KnowledgeBasePtr = std::shared_ptr<const KnowledgeBase>;

}  // namespace ontoquery
