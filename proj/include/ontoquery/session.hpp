#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ontoquery/query.hpp"

namespace ontoquery {

struct Session {
  std::string id;
  std::mutex mutex;  // serializes mutations within the session
  Formulation formulation;
  std::string dataset;  // selector used by execute when none is given

  Session(std::string session_id, Formulation f, std::string selector)
      : id(std::move(session_id)), formulation(std::move(f)), dataset(std::move(selector)) {}
};

/// Server-side formulation sessions keyed by random ids. Sessions idle for
/// longer than the limit are dropped and their ids behave as unknown.
class SessionManager {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionManager(std::chrono::seconds idle_limit = std::chrono::hours(2),
                          std::function<Clock::time_point()> now = Clock::now);

  std::shared_ptr<Session> create(KnowledgeBasePtr kb, const NodeType& root,
                                  std::string dataset = std::string(kAllDatasets));

  /// Refreshes the idle timer. Throws Error(SessionNotFound).
  std::shared_ptr<Session> get(const std::string& id);

  void erase(const std::string& id);
  std::size_t size();

 private:
  struct Entry {
    std::shared_ptr<Session> session;
    Clock::time_point last_activity;
  };
  void purge_locked(Clock::time_point now);

  std::chrono::seconds idle_limit_;
  std::function<Clock::time_point()> now_;
  std::mutex mutex_;
  std::map<std::string, Entry> sessions_;
};

}  // namespace ontoquery
