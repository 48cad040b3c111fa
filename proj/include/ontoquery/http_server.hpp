#pragma once

#include <memory>
#include <string>

#include "ontoquery/api.hpp"

namespace ontoquery {

/// Binds ApiService to HTTP. Request bodies are JSON; every response is
/// JSON. One log line per request goes to stderr.
class HttpServer {
 public:
  explicit HttpServer(ApiService& api, bool log_requests = true);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws Error(IoError).
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ontoquery
