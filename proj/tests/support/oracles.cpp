#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <sstream>

#include "ontoquery/error.hpp"
#include "ontoquery/suggest.hpp"

namespace oracle {

std::set<Iri> Closure::descendants(const Iri& cls) const {
  std::set<Iri> out;
  for (const auto& [c, anc] : ancestors)
    if (anc.count(cls)) out.insert(c);
  return out;
}

Closure bfs_closure(const SchemaIndex& schema) {
  std::map<Iri, std::vector<Iri>> parents;
  for (const auto& [iri, info] : schema.classes()) parents[iri];
  for (const auto& [child, parent] : schema.subclass_edges()) {
    parents[child].push_back(parent);
    parents[parent];
  }
  Closure out;
  for (const auto& [start, ps] : parents) {
    std::set<Iri> seen{start};
    std::deque<Iri> queue{start};
    while (!queue.empty()) {
      Iri at = queue.front();
      queue.pop_front();
      for (const auto& p : parents[at])
        if (seen.insert(p).second) queue.push_back(p);
    }
    out.ancestors[start] = std::move(seen);
  }
  std::set<Iri> grouped;
  for (const auto& [a, anc] : out.ancestors) {
    if (grouped.count(a)) continue;
    std::vector<Iri> group;
    for (const auto& b : anc)
      if (out.ancestors[b].count(a)) group.push_back(b);
    if (group.size() > 1) {
      std::sort(group.begin(), group.end());
      grouped.insert(group.begin(), group.end());
      out.cycles.push_back(std::move(group));
    }
  }
  std::sort(out.cycles.begin(), out.cycles.end());
  return out;
}

bool compare_literal(const Literal& candidate, Comparator c, const Literal& value) {
  auto numeric = [](Datatype d) { return d == Datatype::Decimal || d == Datatype::Integer; };
  if (numeric(candidate.datatype()) && numeric(value.datatype())) {
    const double a = std::strtod(candidate.lexical().c_str(), nullptr);
    const double b = std::strtod(value.lexical().c_str(), nullptr);
    switch (c) {
      case Comparator::Less: return a < b;
      case Comparator::LessEqual: return a <= b;
      case Comparator::Equal: return a == b;
      case Comparator::GreaterEqual: return a >= b;
      case Comparator::Greater: return a > b;
      case Comparator::NotEqual: return a != b;
    }
  }
  const bool same = candidate.datatype() == value.datatype() && candidate.lexical() == value.lexical();
  if (c == Comparator::Equal) return same;
  if (c == Comparator::NotEqual) return !same;
  return false;
}

Answer brute_force(const PathQuery& q, const SchemaIndex& schema,
                   const std::vector<const Graph*>& graphs,
                   const std::vector<std::string>& graph_ids) {
  const Closure closure = bfs_closure(schema);
  const Iri rdf_type(std::string(vocab::kRdf) + "type");

  std::set<Triple> all;
  std::set<Term> universe;
  for (const Graph* g : graphs)
    for (const auto& t : g->triples()) {
      all.insert(t);
      universe.insert(t.subject);
      universe.insert(t.object);
    }

  auto typed_under = [&](const Term& t, const std::set<Iri>& classes) {
    for (const auto& c : classes)
      if (all.count(Triple{t, rdf_type, Term(c)})) return true;
    return false;
  };

  std::vector<std::vector<Term>> candidates;
  std::vector<std::set<Iri>> class_sets(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const QueryNode& n = q.nodes[i];
    std::vector<Term> cand;
    if (n.is_class()) class_sets[i] = closure.descendants(n.class_iri());
    for (const auto& t : universe) {
      if (n.is_class()) {
        if (!typed_under(t, class_sets[i])) continue;
      } else if (!t.is_literal() || t.literal().datatype() != n.datatype()) {
        continue;
      }
      if (n.selection) {
        const bool listed = t.is_iri() && n.selection->instances.count(t.iri());
        if (listed != (n.selection->op == SelectionOp::AnyOf)) continue;
      }
      if (n.filter && !compare_literal(t.literal(), n.filter->comparator, n.filter->value))
        continue;
      cand.push_back(t);
    }
    candidates.push_back(std::move(cand));
  }

  auto index_of = [&](NodeId id) {
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      if (q.nodes[i].id == id) return i;
    std::abort();
  };
  struct E {
    std::size_t a, b;
    Iri p;
    bool forward;
  };
  std::vector<E> edges;
  for (const auto& e : q.edges)
    edges.push_back({index_of(e.from), index_of(e.to), e.property, e.direction == Direction::Forward});
  auto edge_triple = [&](const E& e, const std::vector<Term>& row) {
    return e.forward ? Triple{row[e.a], e.p, row[e.b]} : Triple{row[e.b], e.p, row[e.a]};
  };

  Answer out;
  std::vector<Term> row(q.nodes.size());
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == q.nodes.size()) {
      out.rows.insert(row);
      return;
    }
    for (const auto& t : candidates[k]) {
      row[k] = t;
      bool ok = true;
      for (const auto& e : edges)
        if (std::max(e.a, e.b) == k && !all.count(edge_triple(e, row))) {
          ok = false;
          break;
        }
      if (ok) assign(k + 1);
    }
  };
  assign(0);

  for (const auto& r : out.rows) {
    std::string prov;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      std::set<Triple> mine(graphs[g]->triples().begin(), graphs[g]->triples().end());
      bool support = false;
      for (const auto& e : edges) support = support || mine.count(edge_triple(e, r));
      for (std::size_t i = 0; i < r.size() && !support; ++i)
        for (const auto& c : class_sets[i])
          if (mine.count(Triple{r[i], rdf_type, Term(c)})) support = true;
      if (support) prov += (prov.empty() ? "" : "+") + graph_ids[g];
    }
    out.provenance[r] = prov;
  }
  return out;
}

std::vector<StepKey> path_key(const SchemaPath& p) {
  std::vector<StepKey> out;
  for (const auto& s : p.steps)
    out.emplace_back(s.from, s.property, s.to, s.direction == Direction::Forward ? 0 : 1);
  return out;
}

std::set<std::vector<StepKey>> dfs_paths(const SchemaIndex& schema, const Iri& from,
                                          const Iri& to, std::size_t max_length) {
  const Closure closure = bfs_closure(schema);
  auto compatible = [&](const Iri& a, const Iri& b) {
    return closure.subsumed(a, b) || closure.subsumed(b, a);
  };
  std::vector<std::tuple<Iri, Iri, Iri>> edges;  // subject, property, object
  for (const auto& [iri, p] : schema.properties())
    if (p.kind == PropertyKind::Object)
      for (const auto& d : p.domains)
        for (const auto& r : p.ranges) edges.emplace_back(d, iri, r);
  for (const auto& [iri, c] : schema.classes())
    for (const auto& [prop, filler] : c.restriction_props) edges.emplace_back(iri, prop, filler);

  std::set<std::vector<StepKey>> out;
  if (closure.subsumed(from, to)) {
    out.insert({});
    return out;
  }
  std::vector<StepKey> path;
  std::vector<Iri> visited{from};
  std::function<void(const Iri&)> walk = [&](const Iri& at) {
    if (path.size() == max_length) return;
    for (const auto& [s, p, o] : edges)
      for (int dir = 0; dir < 2; ++dir) {
        const Iri& anchor = dir == 0 ? s : o;
        const Iri& next = dir == 0 ? o : s;
        if (!compatible(at, anchor)) continue;
        if (std::find(visited.begin(), visited.end(), next) != visited.end()) continue;
        path.emplace_back(at, p, next, dir);
        if (closure.subsumed(next, to)) {
          out.insert(path);
        } else {
          visited.push_back(next);
          walk(next);
          visited.pop_back();
        }
        path.pop_back();
      }
  };
  walk(from);
  return out;
}

std::size_t count_statements(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#' || line[b] == '@') continue;
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------

namespace {

const std::string kBase = "http://random.example/";

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t between(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

SchemaIndex random_schema(std::mt19937& rng, const RandomSchemaOptions& opt) {
  const std::size_t n = between(rng, opt.min_classes, opt.max_classes);
  std::map<Iri, ClassInfo> classes;
  std::vector<Iri> ids;
  for (std::size_t i = 0; i < n; ++i) {
    Iri iri(kBase + "C" + std::to_string(i));
    ClassInfo c;
    c.iri = iri;
    c.label = "class " + std::to_string(i);
    c.declared = true;
    if (chance(rng, 0.2)) c.alt_labels.push_back("alias " + std::to_string(i));
    classes.emplace(iri, std::move(c));
    ids.push_back(iri);
  }
  std::set<std::pair<Iri, Iri>> edges;
  for (std::size_t i = 1; i < n; ++i) {
    if (chance(rng, 0.7)) edges.emplace(ids[i], ids[between(rng, 0, i - 1)]);
    if (chance(rng, 0.15)) edges.emplace(ids[i], ids[between(rng, 0, i - 1)]);
  }
  if (opt.allow_cycles) {
    const std::size_t back = between(rng, 0, std::max<std::size_t>(1, n / 5));
    for (std::size_t k = 0; k < back; ++k) {
      const std::size_t a = between(rng, 0, n - 1), b = between(rng, 0, n - 1);
      if (a < b) edges.emplace(ids[a], ids[b]);
    }
  }

  std::map<Iri, PropertyInfo> props;
  std::vector<Iri> object_props;
  const std::size_t n_obj = between(rng, 2, 8);
  for (std::size_t i = 0; i < n_obj; ++i) {
    PropertyInfo p;
    p.iri = Iri(kBase + "p" + std::to_string(i));
    p.label = "relates " + std::to_string(i);
    p.kind = PropertyKind::Object;
    for (std::size_t k = between(rng, 0, 2); k > 0; --k) p.domains.insert(pick(rng, ids));
    for (std::size_t k = between(rng, 0, 2); k > 0; --k) p.ranges.insert(pick(rng, ids));
    object_props.push_back(p.iri);
    props.emplace(p.iri, std::move(p));
  }
  const std::vector<Datatype> dts{Datatype::Decimal, Datatype::Integer, Datatype::String};
  for (std::size_t i = between(rng, 1, 3); i > 0; --i) {
    PropertyInfo p;
    p.iri = Iri(kBase + "d" + std::to_string(i));
    p.label = "value " + std::to_string(i);
    p.kind = PropertyKind::Data;
    if (chance(rng, 0.7)) p.domains.insert(pick(rng, ids));
    const Datatype dt = pick(rng, dts);
    p.ranges.insert(datatype_iri(dt));
    p.sequence = dt == Datatype::String && chance(rng, 0.5);
    props.emplace(p.iri, std::move(p));
  }
  for (const auto& c : ids)
    if (chance(rng, 0.2))
      classes.at(c).restriction_props.emplace_back(pick(rng, object_props), pick(rng, ids));
  return SchemaIndex::from_parts(std::move(classes), std::move(props), std::move(edges));
}

std::vector<Dataset> random_datasets(std::mt19937& rng, const SchemaIndex& schema,
                                     std::size_t max_triples, std::size_t datasets) {
  std::vector<Iri> classes;
  for (const auto& [iri, c] : schema.classes()) classes.push_back(iri);
  std::vector<const PropertyInfo*> obj, data;
  for (const auto& [iri, p] : schema.properties())
    (p.kind == PropertyKind::Object ? obj : data).push_back(&p);

  const Iri rdf_type(std::string(vocab::kRdf) + "type");
  std::vector<std::vector<Triple>> parts(datasets);
  std::size_t budget = between(rng, max_triples / 4, max_triples);
  auto emit = [&](Triple t) {
    if (budget == 0) return;
    --budget;
    parts[between(rng, 0, datasets - 1)].push_back(std::move(t));
  };

  const std::size_t n_inst = between(rng, 5, 40);
  std::vector<Term> inst;
  std::map<Iri, std::vector<Term>> by_class;
  for (std::size_t i = 0; i < n_inst; ++i) {
    Term t(Iri(kBase + "i" + std::to_string(i)));
    inst.push_back(t);
    for (std::size_t k = between(rng, 1, 2); k > 0; --k) {
      const Iri& c = pick(rng, classes);
      by_class[c].push_back(t);
      emit(Triple{t, rdf_type, Term(c)});
    }
  }
  auto member_of = [&](const std::set<Iri>& wanted) -> Term {
    std::vector<Term> pool;
    for (const auto& c : wanted)
      if (by_class.count(c)) pool.insert(pool.end(), by_class[c].begin(), by_class[c].end());
    return pool.empty() || chance(rng, 0.3) ? pick(rng, inst) : pick(rng, pool);
  };
  const std::vector<std::string> decimals{"0.5", "1.0", "1.5", "2", "-3.25", "10"};
  const std::vector<std::string> strings{"ACGT", "acgtn", "GATTACA", "sample", "x"};
  while (budget > 0) {
    if (!data.empty() && chance(rng, 0.3)) {
      const PropertyInfo& p = *pick(rng, data);
      const Datatype dt = datatype_from_iri(*p.ranges.begin()).value_or(Datatype::String);
      Literal lit = dt == Datatype::String    ? Literal::string(pick(rng, strings))
                    : dt == Datatype::Integer ? Literal::integer(static_cast<long long>(between(rng, 0, 5)))
                                              : Literal::decimal(pick(rng, decimals));
      emit(Triple{member_of(p.domains), p.iri, Term(lit)});
    } else {
      const PropertyInfo& p = *pick(rng, obj);
      emit(Triple{member_of(p.domains), p.iri, member_of(p.ranges)});
    }
  }
  std::vector<Dataset> out;
  for (std::size_t i = 0; i < datasets; ++i) {
    const std::string id = "ds" + std::to_string(i);
    out.push_back(Dataset{id, "dataset " + std::to_string(i), Graph(id, std::move(parts[i]))});
  }
  return out;
}

PathQuery random_query(std::mt19937& rng, const KnowledgeBase& kb, std::size_t max_nodes) {
  const SchemaIndex& schema = kb.schema();
  const SubclassClosure& closure = kb.closure();
  std::vector<Iri> classes;
  for (const auto& [iri, c] : schema.classes()) classes.push_back(iri);

  PathQuery q = new_query(kb, pick(rng, classes));
  const std::size_t want = between(rng, 1, max_nodes);
  for (int attempt = 0; attempt < 40 && q.nodes.size() < want; ++attempt) {
    std::vector<const QueryNode*> class_nodes;
    for (const auto& n : q.nodes)
      if (n.is_class()) class_nodes.push_back(&n);
    const QueryNode& from = *pick(rng, class_nodes);
    const Direction dir = chance(rng, 0.6) ? Direction::Forward : Direction::Inverse;
    const auto rels = suggest_relations(schema, closure, from.class_iri(), dir);
    if (rels.empty()) continue;
    const PropertyInfo& p = pick(rng, rels);
    NodeType target;
    if (p.kind == PropertyKind::Data) {
      target = p.ranges.empty() ? Datatype::Decimal
                                : datatype_from_iri(*p.ranges.begin()).value_or(Datatype::String);
    } else {
      const auto targets = dir == Direction::Forward
                               ? forward_targets(schema, closure, from.class_iri(), p.iri)
                               : inverse_targets(schema, p.iri);
      Iri t = targets.empty() ? pick(rng, classes)
                              : pick(rng, std::vector<Iri>(targets.begin(), targets.end()));
      if (chance(rng, 0.3)) {
        const auto& down = closure.descendants(t);
        t = pick(rng, std::vector<Iri>(down.begin(), down.end()));
      }
      target = t;
    }
    try {
      q = add_step(kb, q, from.id, p.iri, dir, target);
    } catch (const Error&) {
    }
  }

  const GraphRefs all = kb.select(kAllDatasets);
  const std::vector<std::string> decimals{"0", "1", "1.5", "2.0"};
  const std::vector<std::string> strings{"ACGT", "sample", "x"};
  for (const auto& n : std::vector<QueryNode>(q.nodes)) {
    if (n.is_class() && chance(rng, 0.25)) {
      const auto ext = instances_of_extended(closure, n.class_iri(), all);
      std::vector<Iri> pool;
      for (const auto& t : ext.direct) pool.push_back(t.iri());
      for (const auto& [t, w] : ext.via_subclass) pool.push_back(t.iri());
      if (pool.empty()) continue;
      std::set<Iri> chosen;
      for (std::size_t k = between(rng, 1, 3); k > 0; --k) chosen.insert(pick(rng, pool));
      q = set_instance_selection(kb, q, n.id,
                                 chance(rng, 0.5) ? SelectionOp::AnyOf : SelectionOp::NoneOf, chosen);
    } else if (!n.is_class() && chance(rng, 0.5)) {
      if (is_numeric(n.datatype())) {
        const std::vector<Comparator> cmps{Comparator::Less,         Comparator::LessEqual,
                                           Comparator::Equal,        Comparator::GreaterEqual,
                                           Comparator::Greater,      Comparator::NotEqual};
        q = add_literal_filter(kb, q, n.id, pick(rng, cmps), Literal::decimal(pick(rng, decimals)));
      } else if (n.datatype() == Datatype::String) {
        q = add_literal_filter(kb, q, n.id, chance(rng, 0.5) ? Comparator::Equal : Comparator::NotEqual,
                               Literal::string(pick(rng, strings)));
      }
    }
  }
  if (chance(rng, 0.3) && !kb.datasets().empty()) {
    std::vector<std::string> ids;
    for (const auto& d : kb.datasets()) ids.push_back(d.id);
    q = with_dataset(q, pick(rng, ids));
  }
  return q;
}

}  // namespace oracle
