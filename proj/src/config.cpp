#include "ontoquery/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line) + ": " + msg);
}

std::size_t positive(const std::string& v, std::size_t line, const std::string& key) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || out == 0)
    bad(line, key + " must be a positive integer");
  return out;
}

bool valid_dataset_id(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::vector<Iri> iri_list(const std::string& v, std::size_t line) {
  std::vector<Iri> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) {
    if (tok.size() > 1 && tok.front() == '<' && tok.back() == '>') tok = tok.substr(1, tok.size() - 2);
    if (!is_valid_iri(tok)) bad(line, "malformed IRI '" + tok + "'");
    out.emplace_back(tok);
  }
  if (out.empty()) bad(line, "expected at least one IRI");
  return out;
}

}  // namespace

DeploymentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  DeploymentConfig cfg;
  std::map<std::string, DatasetSpec> datasets;
  std::vector<std::string> order;
  bool have_schema = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) bad(line_no, "empty key or value");

    if (key == "schema") {
      cfg.schema = base_dir / value;
      have_schema = true;
    } else if (key.rfind("dataset.", 0) == 0) {
      std::string id = key.substr(8);
      bool label = false;
      if (id.size() > 6 && id.compare(id.size() - 6, 6, ".label") == 0) {
        id.resize(id.size() - 6);
        label = true;
      }
      if (!valid_dataset_id(id)) bad(line_no, "invalid dataset id '" + id + "'");
      if (id == "all") bad(line_no, "dataset id 'all' is reserved");
      auto [it, fresh] = datasets.try_emplace(id);
      if (fresh) {
        order.push_back(id);
        it->second.id = id;
      }
      if (label) {
        it->second.label = value;
      } else {
        if (!it->second.path.empty()) bad(line_no, "duplicate dataset id '" + id + "'");
        it->second.path = base_dir / value;
      }
    } else if (key == "suggestion_limit") {
      cfg.suggestion_limit = positive(value, line_no, key);
    } else if (key == "path_max_length") {
      cfg.path_max_length = positive(value, line_no, key);
      if (cfg.path_max_length > 8) bad(line_no, "path_max_length must be at most 8");
    } else if (key == "cache_capacity") {
      cfg.cache_capacity = positive(value, line_no, key);
    } else if (key == "enrichment") {
      if (value != "stub" && value != "ncbi" && value != "off")
        bad(line_no, "enrichment must be stub, ncbi or off");
      cfg.enrichment = value;
    } else if (key == "blast.base_url") {
      cfg.blast.base_url = value;
    } else if (key == "blast.program") {
      cfg.blast.program = value;
    } else if (key == "blast.database") {
      cfg.blast.database = value;
    } else if (key == "blast.timeout_seconds") {
      cfg.blast.timeout = std::chrono::seconds(positive(value, line_no, key));
    } else if (key == "listen") {
      split_listen(value);
      cfg.listen = value;
    } else if (key == "session_idle_seconds") {
      cfg.session_idle = std::chrono::seconds(positive(value, line_no, key));
    } else if (key == "job_expiry_seconds") {
      cfg.job_expiry = std::chrono::seconds(positive(value, line_no, key));
    } else if (key == "annotation.label") {
      cfg.annotations.label = iri_list(value, line_no);
    } else if (key == "annotation.description") {
      cfg.annotations.description = iri_list(value, line_no);
    } else if (key == "annotation.alt_label") {
      cfg.annotations.alt_label = iri_list(value, line_no);
    } else {
      bad(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_schema) throw Error(ErrorCode::ConfigError, "config has no schema entry");
  for (const auto& id : order) {
    DatasetSpec& d = datasets.at(id);
    if (d.path.empty()) throw Error(ErrorCode::ConfigError, "dataset '" + id + "' has no file");
    if (d.label.empty()) d.label = id;
    cfg.datasets.push_back(std::move(d));
  }
  return cfg;
}

DeploymentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0)
    throw Error(ErrorCode::ConfigError, "listen must be host:port");
  int port = 0;
  const char* b = listen.data() + colon + 1;
  const char* e = listen.data() + listen.size();
  auto [p, ec] = std::from_chars(b, e, port);
  if (ec != std::errc() || p != e || port < 0 || port > 65535)
    throw Error(ErrorCode::ConfigError, "invalid port in '" + listen + "'");
  return {listen.substr(0, colon), port};
}

}  // namespace ontoquery
