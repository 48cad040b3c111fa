#include "ontoquery/session.hpp"

#include "ontoquery/error.hpp"
#include "ontoquery/ids.hpp"

namespace ontoquery {

SessionManager::SessionManager(std::chrono::seconds idle_limit,
                               std::function<Clock::time_point()> now)
    : idle_limit_(idle_limit), now_(std::move(now)) {}

std::shared_ptr<Session> SessionManager::create(KnowledgeBasePtr kb, const NodeType& root,
                                                std::string dataset) {
  kb->select(dataset);
  Formulation f(std::move(kb), root);
  std::lock_guard lock(mutex_);
  const auto now = now_();
  purge_locked(now);
  std::string id;
  do id = random_hex_id(16);
  while (sessions_.count(id));
  auto s = std::make_shared<Session>(id, std::move(f), std::move(dataset));
  sessions_[id] = Entry{s, now};
  return s;
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto now = now_();
  purge_locked(now);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::SessionNotFound, "unknown session '" + id + "'");
  it->second.last_activity = now;
  return it->second.session;
}

void SessionManager::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  sessions_.erase(id);
}

std::size_t SessionManager::size() {
  std::lock_guard lock(mutex_);
  purge_locked(now_());
  return sessions_.size();
}

void SessionManager::purge_locked(Clock::time_point now) {
  std::erase_if(sessions_,
                [&](const auto& kv) { return now - kv.second.last_activity > idle_limit_; });
}

}  // namespace ontoquery
