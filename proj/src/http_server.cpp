#include "ontoquery/http_server.hpp"

#include <chrono>
#include <iostream>
#include <mutex>

#include <httplib.h>

#include "ontoquery/error.hpp"

namespace ontoquery {

struct HttpServer::Impl {
  ApiService& api;
  bool log;
  httplib::Server server;
  std::mutex log_mutex;

  Impl(ApiService& a, bool l) : api(a), log(l) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    const auto start = std::chrono::steady_clock::now();
    ApiRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.params[k] = v;
    ApiResponse out = api.handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
    if (log) {
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      Json line = {{"method", req.method}, {"path", req.path}, {"status", out.status}, {"micros", us}};
      if (out.body.contains("error")) line["error"] = out.body["error"]["code"];
      std::lock_guard lock(log_mutex);
      std::cerr << line.dump() << '\n';
    }
  }
};

HttpServer::HttpServer(ApiService& api, bool log_requests)
    : impl_(std::make_unique<Impl>(api, log_requests)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  const std::string any = R"(/.*)";
  impl_->server.Get(any, handler);
  impl_->server.Post(any, handler);
  impl_->server.Delete(any, handler);
  impl_->server.Options(any, [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                     {"Access-Control-Allow-Headers", "Content-Type"},
                                     {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0)
    throw Error(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace ontoquery
