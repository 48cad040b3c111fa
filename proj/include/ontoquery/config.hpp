#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ontoquery/enrichment.hpp"
#include "ontoquery/schema.hpp"

namespace ontoquery {

struct DatasetSpec {
  std::string id;
  std::string label;
  std::filesystem::path path;
};

/// Startup configuration. Text form: one `key = value` per line, `#`
/// comments, paths relative to the file's directory. See docs/config.md.
struct DeploymentConfig {
  std::filesystem::path schema;
  std::vector<DatasetSpec> datasets;  // file order
  std::size_t suggestion_limit = 20;
  std::size_t path_max_length = 6;
  std::size_t cache_capacity = 256;
  std::string enrichment = "stub";  // stub | ncbi | off
  BlastOptions blast;
  std::string listen = "127.0.0.1:8080";
  std::chrono::seconds session_idle{7200};
  std::chrono::seconds job_expiry{3600};
  AnnotationVocabulary annotations;
};

/// Throws Error(ConfigError) naming the offending line.
DeploymentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);

/// Throws Error(IoError) when the file cannot be read.
DeploymentConfig load_config(const std::filesystem::path& path);

/// Splits "host:port"; throws Error(ConfigError).
std::pair<std::string, int> split_listen(const std::string& listen);

}  // namespace ontoquery
