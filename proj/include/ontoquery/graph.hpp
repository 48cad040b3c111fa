#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ontoquery/rdf.hpp"

namespace ontoquery {

/// A (subject?, predicate?, object?) match pattern. Unset positions are
/// wildcards.
struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Iri> predicate;
  std::optional<Term> object;
};

/// Immutable set of triples with subject, predicate and object indexes.
/// Triples are kept sorted and duplicate-free.
class Graph {
 public:
  Graph() = default;
  Graph(std::string id, std::vector<Triple> triples);

  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const std::vector<Triple>& triples() const noexcept { return triples_; }

  bool contains(const Triple& t) const;

  /// Invokes fn(const Triple&) for every triple matching the pattern, using
  /// the smallest candidate list among the bound positions.
  template <typename Fn>
  void for_each_match(const TriplePattern& pattern, Fn&& fn) const {
    const std::vector<std::uint32_t>* candidates = candidate_list(pattern);
    if (candidates == nullptr) {
      if (pattern.subject || pattern.predicate || pattern.object) return;
      for (const auto& t : triples_) fn(t);
      return;
    }
    for (auto idx : *candidates) {
      const Triple& t = triples_[idx];
      if (matches(t, pattern)) fn(t);
    }
  }

  std::vector<Triple> lookup(const TriplePattern& pattern) const;

  static bool matches(const Triple& t, const TriplePattern& p);

  /// Index sizes, exposed for coherence checks.
  std::size_t subject_index_entries() const;
  std::size_t predicate_index_entries() const;
  std::size_t object_index_entries() const;

 private:
  // Returns nullptr for a fully unbound pattern, or when a bound key is
  // absent (the caller distinguishes by inspecting the pattern).
  const std::vector<std::uint32_t>* candidate_list(const TriplePattern& p) const;

  std::string id_;
  std::vector<Triple> triples_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_subject_;
  std::unordered_map<Iri, std::vector<std::uint32_t>> by_predicate_;
  std::unordered_map<Term, std::vector<std::uint32_t>, TermHash> by_object_;
};

}  // namespace ontoquery
