#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontoquery/compiler.hpp"
#include "ontoquery/knowledge_base.hpp"

namespace ontoquery {

inline constexpr std::size_t kDefaultCacheCapacity = 256;

struct ResultTable {
  std::vector<OutputColumn> columns;
  std::vector<std::vector<Term>> rows;  // one value per column, sorted, distinct
  /// Per row: '+'-joined ids of the selected datasets holding its supporting
  /// edge and type triples, e.g. "strains+transcriptome".
  std::vector<std::string> provenance;

  bool operator==(const ResultTable&) const = default;
  std::size_t column_of(NodeId node) const;  // throws Error(UnknownNode)
};

/// Runs the plan over the union of the graphs picked by `selector`
/// (plan.dataset when empty). Throws Error(UnknownDataset).
ResultTable execute(const EvaluationPlan& plan, const KnowledgeBase& kb,
                    std::string_view selector = {});

struct PartitionedResults {
  ResultTable specific;
  ResultTable general;
  /// Parallel to general.rows: node -> proper subclass that admitted the value.
  std::vector<std::map<NodeId, Iri>> general_witness;
};

/// A row is general when any class node's value lacks an asserted type
/// equal to the node's queried class.
PartitionedResults partition_results(const ResultTable& table, const PathQuery& q,
                                     const SubclassClosure& closure, const GraphRefs& graphs);

/// Header line of column labels, then one line per row. Cells are display
/// labels when `kb` is given, N-Triples terms otherwise. Tabs and newlines
/// inside cells become spaces.
std::string to_delimited(const ResultTable& table, const KnowledgeBase* kb = nullptr,
                         char delimiter = '\t');

/// LRU map from canonical query text to result tables, stamped with the
/// knowledge-base version that produced them.
class ResultCache {
 public:
  explicit ResultCache(std::size_t capacity = kDefaultCacheCapacity);

  std::optional<ResultTable> lookup(const std::string& key, std::uint64_t stamp);
  void insert(const std::string& key, std::uint64_t stamp, ResultTable table);

  std::size_t size() const;
  std::size_t capacity() const noexcept { return capacity_; }
  void clear();

 private:
  struct Entry {
    std::string key;
    std::uint64_t stamp;
    ResultTable table;
  };

  mutable std::mutex mutex_;
  std::size_t capacity_;
  std::list<Entry> order_;  // most recent first
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

using Executor = std::function<ResultTable(const EvaluationPlan&, const KnowledgeBase&)>;

struct CachedResult {
  ResultTable table;
  bool cache_hit = false;
};

/// Keyed by canonicalize(q with the selector applied). `executor` defaults
/// to execute(); tests inject counting executors.
CachedResult cached_execute(const PathQuery& q, std::string_view selector,
                            const KnowledgeBase& kb, ResultCache& cache,
                            const Executor& executor = {});

}  // namespace ontoquery
