#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ontoquery/answer.hpp"
#include "ontoquery/config.hpp"
#include "ontoquery/enrichment.hpp"
#include "ontoquery/knowledge_base.hpp"

namespace ontoquery {

struct DatasetDescriptor {
  std::string id;
  std::string label;
  std::size_t triples = 0;

  bool operator==(const DatasetDescriptor&) const = default;
};

/// Everything one process serves: the frozen knowledge base plus the shared
/// result cache, enrichment job registry and alignment service.
class Deployment {
 public:
  /// Loads the schema and every dataset before constructing anything, so
  /// one unreadable or malformed file aborts startup as a whole.
  static std::shared_ptr<Deployment> load(const DeploymentConfig& config);

  Deployment(DeploymentConfig config, KnowledgeBasePtr kb);

  const DeploymentConfig& config() const noexcept { return config_; }
  const KnowledgeBasePtr& knowledge_base() const noexcept { return kb_; }
  ResultCache& cache() noexcept { return cache_; }
  JobRegistry& jobs() noexcept { return jobs_; }
  /// Null when enrichment is off.
  const std::shared_ptr<AlignmentService>& alignment_service() const noexcept { return service_; }
  void set_alignment_service(std::shared_ptr<AlignmentService> s) { service_ = std::move(s); }

  /// One entry per dataset in configuration order, then "all".
  std::vector<DatasetDescriptor> list_datasets() const;

 private:
  DeploymentConfig config_;
  KnowledgeBasePtr kb_;
  ResultCache cache_;
  JobRegistry jobs_;
  std::shared_ptr<AlignmentService> service_;
};

}  // namespace ontoquery
