#include "ontoquery/deployment.hpp"

#include "ontoquery/error.hpp"
#include "ontoquery/turtle.hpp"

namespace ontoquery {

std::shared_ptr<Deployment> Deployment::load(const DeploymentConfig& config) {
  Diagnostics load_diagnostics;
  Graph schema = load_turtle_file(config.schema, "schema", &load_diagnostics);
  std::vector<Dataset> datasets;
  datasets.reserve(config.datasets.size());
  for (const auto& spec : config.datasets)
    datasets.push_back(
        Dataset{spec.id, spec.label, load_turtle_file(spec.path, spec.id, &load_diagnostics)});
  auto kb = std::make_shared<KnowledgeBase>(std::move(schema), std::move(datasets),
                                            config.annotations, std::move(load_diagnostics));
  return std::make_shared<Deployment>(config, std::move(kb));
}

Deployment::Deployment(DeploymentConfig config, KnowledgeBasePtr kb)
    : config_(std::move(config)),
      kb_(std::move(kb)),
      cache_(config_.cache_capacity),
      jobs_(config_.job_expiry) {
  if (config_.enrichment == "stub")
    service_ = std::make_shared<StubAlignmentService>();
  else if (config_.enrichment == "ncbi")
    service_ = std::make_shared<NcbiBlastService>(config_.blast);
}

std::vector<DatasetDescriptor> Deployment::list_datasets() const {
  std::vector<DatasetDescriptor> out;
  std::size_t total = 0;
  for (const auto& d : kb_->datasets()) {
    out.push_back({d.id, d.label, d.graph.size()});
    total += d.graph.size();
  }
  out.push_back({std::string(kAllDatasets), "All datasets", total});
  return out;
}

}  // namespace ontoquery
