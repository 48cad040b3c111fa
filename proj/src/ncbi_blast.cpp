#include <cstdlib>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ontoquery/enrichment.hpp"
#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

// "    RID = ABC123" style key/value lines in the BLAST QBlastInfo block.
std::string info_value(const std::string& body, const std::string& key) {
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    const auto k = line.find(key);
    if (k == std::string::npos) continue;
    const auto eq = line.find('=', k + key.size());
    if (eq == std::string::npos) continue;
    std::string v = line.substr(eq + 1);
    v.erase(0, v.find_first_not_of(" \t"));
    v.erase(v.find_last_not_of(" \t\r") + 1);
    return v;
  }
  return {};
}

}  // namespace

NcbiBlastService::NcbiBlastService(BlastOptions options) : options_(std::move(options)) {
  if (options_.api_key.empty())
    if (const char* key = std::getenv("NCBI_API_KEY")) options_.api_key = key;
}

AlignmentHit NcbiBlastService::align(const std::string& sequence) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (options_.base_url.rfind("https://", 0) == 0)
    throw Error(ErrorCode::Internal, "built without TLS support; cannot reach " + options_.base_url);
#endif
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);

  auto call = [&](httplib::Params params) {
    if (!options_.api_key.empty()) params.emplace("api_key", options_.api_key);
    auto res = client.Post(options_.path, params);
    if (!res) throw Error(ErrorCode::Internal, "BLAST request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error(ErrorCode::Internal, "BLAST request returned HTTP " + std::to_string(res->status));
    return res->body;
  };

  const std::string put = call({{"CMD", "Put"},
                                {"PROGRAM", options_.program},
                                {"DATABASE", options_.database},
                                {"QUERY", sequence}});
  const std::string rid = info_value(put, "RID");
  if (rid.empty()) throw Error(ErrorCode::Internal, "BLAST did not return a request id");

  for (int i = 0;; ++i) {
    if (i == options_.max_polls) throw Error(ErrorCode::Internal, "BLAST search " + rid + " timed out");
    std::this_thread::sleep_for(options_.poll_interval);
    const std::string info = call({{"CMD", "Get"}, {"FORMAT_OBJECT", "SearchInfo"}, {"RID", rid}});
    const std::string status = info_value(info, "Status");
    if (status == "READY") break;
    if (status == "FAILED" || status == "UNKNOWN")
      throw Error(ErrorCode::Internal, "BLAST search " + rid + " " + status);
  }

  const std::string tab =
      call({{"CMD", "Get"}, {"FORMAT_TYPE", "Tabular"}, {"RID", rid}, {"HITLIST_SIZE", "1"}});
  std::istringstream in(tab);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '<') continue;
    std::vector<std::string> fields;
    std::istringstream cols(line);
    std::string f;
    while (std::getline(cols, f, '\t')) fields.push_back(f);
    if (fields.size() < 12) continue;
    return {fields[1], std::strtod(fields[11].c_str(), nullptr)};
  }
  return {"no hits", 0.0};
}

}  // namespace ontoquery
