#include "ontoquery/graph.hpp"

#include <algorithm>

namespace ontoquery {

Graph::Graph(std::string id, std::vector<Triple> triples)
    : id_(std::move(id)), triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  for (std::uint32_t i = 0; i < triples_.size(); ++i) {
    const auto& t = triples_[i];
    by_subject_[t.subject].push_back(i);
    by_predicate_[t.predicate].push_back(i);
    by_object_[t.object].push_back(i);
  }
}

bool Graph::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

bool Graph::matches(const Triple& t, const TriplePattern& p) {
  if (p.subject && t.subject != *p.subject) return false;
  if (p.predicate && t.predicate != *p.predicate) return false;
  if (p.object && t.object != *p.object) return false;
  return true;
}

const std::vector<std::uint32_t>* Graph::candidate_list(const TriplePattern& p) const {
  const std::vector<std::uint32_t>* best = nullptr;
  auto consider = [&](const std::vector<std::uint32_t>* list) {
    if (best == nullptr || list->size() < best->size()) best = list;
  };
  static const std::vector<std::uint32_t> kEmpty;
  if (p.subject) {
    auto it = by_subject_.find(*p.subject);
    if (it == by_subject_.end()) return &kEmpty;
    consider(&it->second);
  }
  if (p.predicate) {
    auto it = by_predicate_.find(*p.predicate);
    if (it == by_predicate_.end()) return &kEmpty;
    consider(&it->second);
  }
  if (p.object) {
    auto it = by_object_.find(*p.object);
    if (it == by_object_.end()) return &kEmpty;
    consider(&it->second);
  }
  return best;
}

std::vector<Triple> Graph::lookup(const TriplePattern& pattern) const {
  std::vector<Triple> out;
  for_each_match(pattern, [&](const Triple& t) { out.push_back(t); });
  return out;
}

namespace {
template <typename Map>
std::size_t entries(const Map& m) {
  std::size_t n = 0;
  for (const auto& [key, list] : m) n += list.size();
  return n;
}
}  // namespace

std::size_t Graph::subject_index_entries() const { return entries(by_subject_); }
std::size_t Graph::predicate_index_entries() const { return entries(by_predicate_); }
std::size_t Graph::object_index_entries() const { return entries(by_object_); }

}  // namespace ontoquery
