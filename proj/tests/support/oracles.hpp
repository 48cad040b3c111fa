#pragma once

// Reference implementations used only by tests. Each one is written from
// the definitions, without the engine's indexes, plans or closure.

#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ontoquery/answer.hpp"
#include "ontoquery/knowledge_base.hpp"
#include "ontoquery/query.hpp"

namespace oracle {

using namespace ontoquery;

struct Closure {
  std::map<Iri, std::set<Iri>> ancestors;  // reflexive
  std::vector<std::vector<Iri>> cycles;    // sorted groups of size > 1, sorted

  bool subsumed(const Iri& child, const Iri& parent) const {
    return ancestors.at(child).count(parent) != 0;
  }
  std::set<Iri> descendants(const Iri& cls) const;
};

/// Breadth-first search from every class over the direct subclass edges.
Closure bfs_closure(const SchemaIndex& schema);

struct Answer {
  std::set<std::vector<Term>> rows;
  std::map<std::vector<Term>, std::string> provenance;
};

/// Enumerates every assignment of terms to query nodes (node creation
/// order) and keeps those satisfying all atoms of the query.
Answer brute_force(const PathQuery& q, const SchemaIndex& schema,
                   const std::vector<const Graph*>& graphs,
                   const std::vector<std::string>& graph_ids);

/// (from, property, to, direction) of one path step.
using StepKey = std::tuple<Iri, Iri, Iri, int>;
std::vector<StepKey> path_key(const SchemaPath& p);

/// All simple schema paths by depth-first enumeration.
std::set<std::vector<StepKey>> dfs_paths(const SchemaIndex& schema, const Iri& from,
                                          const Iri& to, std::size_t max_length);

/// Literal comparison written from the comparator definitions.
bool compare_literal(const Literal& candidate, Comparator c, const Literal& value);

/// Non-blank, non-comment lines of a line-per-statement document.
std::size_t count_statements(const std::string& text);

// ---------------------------------------------------------------------------
// Random instances

struct RandomSchemaOptions {
  std::size_t min_classes = 3;
  std::size_t max_classes = 50;
  bool allow_cycles = false;
};

SchemaIndex random_schema(std::mt19937& rng, const RandomSchemaOptions& opt = {});

/// Instance data over `schema` split across `datasets` graphs; at most
/// `max_triples` triples in total.
std::vector<Dataset> random_datasets(std::mt19937& rng, const SchemaIndex& schema,
                                     std::size_t max_triples = 200, std::size_t datasets = 2);

/// A valid query of at most `max_nodes` nodes, grown through add_step with
/// relations offered by suggest_relations. May attach selections/filters.
PathQuery random_query(std::mt19937& rng, const KnowledgeBase& kb, std::size_t max_nodes = 5);

}  // namespace oracle
