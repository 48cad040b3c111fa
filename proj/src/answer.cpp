#include "ontoquery/answer.hpp"

#include <algorithm>
#include <set>

#include "ontoquery/error.hpp"

namespace ontoquery {

std::size_t ResultTable::column_of(NodeId node) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].node == node) return i;
  throw Error(ErrorCode::UnknownNode, "no column for node " + std::to_string(node));
}

namespace {

using PartialRow = std::vector<std::optional<Term>>;

class PlanRunner {
 public:
  PlanRunner(const EvaluationPlan& plan, const KnowledgeBase& kb, GraphRefs graphs)
      : plan_(plan), kb_(kb), graphs_(std::move(graphs)) {
    for (std::size_t i = 0; i < plan.columns.size(); ++i) slot_[plan.columns[i].node] = i;
  }

  std::vector<std::vector<Term>> run() {
    for (const auto& step : plan_.steps) std::visit([&](const auto& s) { apply(s); }, step);
    std::vector<std::vector<Term>> out;
    out.reserve(rows_.size());
    for (auto& r : rows_) {
      std::vector<Term> row;
      row.reserve(r.size());
      for (auto& v : r) row.push_back(std::move(*v));
      out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void apply(const ExtendedTypeScan& s) {
    auto ext = instances_of_extended(kb_.closure(), s.cls, graphs_);
    if (!seeded_) {
      seeded_ = true;
      auto seed = [&](const Term& t) {
        PartialRow row(plan_.columns.size());
        row[slot_.at(s.node)] = t;
        rows_.push_back(std::move(row));
      };
      for (const auto& t : ext.direct) seed(t);
      for (const auto& [t, w] : ext.via_subclass) seed(t);
    }
    members_[s.node] = std::move(ext);
  }

  void apply(const LiteralBind& s) { datatypes_[s.node] = s.datatype; }

  void apply(const EdgeJoin& j) {
    const QueryEdge& e = j.edge;
    const std::size_t from = slot_.at(e.from), to = slot_.at(e.to);
    std::vector<PartialRow> next;
    for (const auto& row : rows_) {
      const Term& v = *row[from];
      std::set<Term> reached;
      for (const Graph& g : graphs_) {
        if (e.direction == Direction::Forward)
          g.for_each_match({v, e.property, std::nullopt},
                           [&](const Triple& t) { reached.insert(t.object); });
        else
          g.for_each_match({std::nullopt, e.property, v},
                           [&](const Triple& t) { reached.insert(t.subject); });
      }
      for (const auto& n : reached) {
        if (!admits(e.to, n)) continue;
        PartialRow r = row;
        r[to] = n;
        next.push_back(std::move(r));
      }
    }
    rows_ = std::move(next);
  }

  void apply(const InstanceRestrict& s) {
    const std::size_t at = slot_.at(s.node);
    std::erase_if(rows_, [&](const PartialRow& r) {
      const Term& v = *r[at];
      const bool listed = v.is_iri() && s.instances.count(v.iri());
      return (s.op == SelectionOp::AnyOf) != listed;
    });
  }

  void apply(const FilterApply& s) {
    const std::size_t at = slot_.at(s.node);
    std::erase_if(rows_, [&](const PartialRow& r) {
      const Term& v = *r[at];
      return !v.is_literal() || !s.filter.accepts(v.literal());
    });
  }

  bool admits(NodeId node, const Term& value) const {
    if (auto m = members_.find(node); m != members_.end()) return m->second.contains(value);
    if (auto d = datatypes_.find(node); d != datatypes_.end())
      return value.is_literal() && value.literal().datatype() == d->second;
    throw Error(ErrorCode::Internal, "plan joins node " + std::to_string(node) + " before binding it");
  }

  const EvaluationPlan& plan_;
  const KnowledgeBase& kb_;
  GraphRefs graphs_;
  std::map<NodeId, std::size_t> slot_;
  std::map<NodeId, ExtendedInstances> members_;
  std::map<NodeId, Datatype> datatypes_;
  std::vector<PartialRow> rows_;
  bool seeded_ = false;
};

struct EdgeRef {
  std::size_t from, to;
  Iri property;
  Direction direction;
};

std::string row_provenance(const std::vector<Term>& row, const std::vector<EdgeRef>& edges,
                           const std::vector<std::optional<std::set<Iri>>>& class_sets,
                           const KnowledgeBase& kb, std::string_view selector) {
  std::set<std::string> ids;
  for (const auto& d : kb.datasets()) {
    if (selector != kAllDatasets && d.id != selector) continue;
    bool supports = false;
    for (const auto& e : edges) {
      const Term& s = e.direction == Direction::Forward ? row[e.from] : row[e.to];
      const Term& o = e.direction == Direction::Forward ? row[e.to] : row[e.from];
      if (d.graph.contains(Triple{s, e.property, o})) {
        supports = true;
        break;
      }
    }
    for (std::size_t c = 0; !supports && c < row.size(); ++c) {
      if (!class_sets[c]) continue;
      d.graph.for_each_match({row[c], vocab::rdf_type(), std::nullopt}, [&](const Triple& t) {
        if (t.object.is_iri() && class_sets[c]->count(t.object.iri())) supports = true;
      });
    }
    if (supports) ids.insert(d.id);
  }
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : "+") + id;
  return out;
}

}  // namespace

ResultTable execute(const EvaluationPlan& plan, const KnowledgeBase& kb, std::string_view selector) {
  if (selector.empty()) selector = plan.dataset;
  GraphRefs graphs = kb.select(selector);

  ResultTable table;
  table.columns = plan.columns;
  table.rows = PlanRunner(plan, kb, graphs).run();

  std::map<NodeId, std::size_t> slot;
  for (std::size_t i = 0; i < plan.columns.size(); ++i) slot[plan.columns[i].node] = i;
  std::vector<EdgeRef> edges;
  std::vector<std::optional<std::set<Iri>>> class_sets(plan.columns.size());
  for (const auto& step : plan.steps) {
    if (const auto* j = std::get_if<EdgeJoin>(&step))
      edges.push_back({slot.at(j->edge.from), slot.at(j->edge.to), j->edge.property,
                       j->edge.direction});
    else if (const auto* s = std::get_if<ExtendedTypeScan>(&step))
      class_sets[slot.at(s->node)] = kb.closure().descendants(s->cls);
  }
  table.provenance.reserve(table.rows.size());
  for (const auto& row : table.rows)
    table.provenance.push_back(row_provenance(row, edges, class_sets, kb, selector));
  return table;
}

PartitionedResults partition_results(const ResultTable& table, const PathQuery& q,
                                     const SubclassClosure& closure, const GraphRefs& graphs) {
  PartitionedResults out;
  out.specific.columns = out.general.columns = table.columns;

  std::vector<std::pair<std::size_t, ExtendedInstances>> class_columns;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const QueryNode& n = q.node(table.columns[c].node);
    if (n.is_class())
      class_columns.emplace_back(c, instances_of_extended(closure, n.class_iri(), graphs));
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::map<NodeId, Iri> witness;
    for (const auto& [c, ext] : class_columns) {
      auto it = ext.via_subclass.find(table.rows[r][c]);
      if (it != ext.via_subclass.end()) witness.emplace(table.columns[c].node, it->second);
    }
    ResultTable& dest = witness.empty() ? out.specific : out.general;
    dest.rows.push_back(table.rows[r]);
    if (r < table.provenance.size()) dest.provenance.push_back(table.provenance[r]);
    if (!witness.empty()) out.general_witness.push_back(std::move(witness));
  }
  return out;
}

std::string to_delimited(const ResultTable& table, const KnowledgeBase* kb, char delimiter) {
  auto clean = [&](std::string s) {
    for (auto& ch : s)
      if (ch == delimiter || ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
    return s;
  };
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += delimiter;
    out += clean(table.columns[c].label);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += delimiter;
      out += clean(kb ? kb->display_label(row[c]) : row[c].to_string());
    }
    out += '\n';
  }
  return out;
}

ResultCache::ResultCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::InvalidArgument, "cache capacity must be positive");
}

std::optional<ResultTable> ResultCache::lookup(const std::string& key, std::uint64_t stamp) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  if (it->second->stamp != stamp) {
    order_.erase(it->second);
    index_.erase(it);
    return std::nullopt;
  }
  order_.splice(order_.begin(), order_, it->second);
  return it->second->table;
}

void ResultCache::insert(const std::string& key, std::uint64_t stamp, ResultTable table) {
  std::lock_guard lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) {
    order_.erase(it->second);
    index_.erase(it);
  }
  order_.push_front(Entry{key, stamp, std::move(table)});
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().key);
    order_.pop_back();
  }
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

void ResultCache::clear() {
  std::lock_guard lock(mutex_);
  order_.clear();
  index_.clear();
}

CachedResult cached_execute(const PathQuery& q, std::string_view selector,
                            const KnowledgeBase& kb, ResultCache& cache,
                            const Executor& executor) {
  const PathQuery keyed = selector.empty() ? q : with_dataset(q, std::string(selector));
  const std::string key = canonicalize(keyed);
  if (auto hit = cache.lookup(key, kb.version())) return {std::move(*hit), true};
  EvaluationPlan plan = compile(keyed, kb.schema(), kb.closure());
  ResultTable table = executor ? executor(plan, kb) : execute(plan, kb);
  cache.insert(key, kb.version(), table);
  return {std::move(table), false};
}

}  // namespace ontoquery
