#include "ontoquery/reasoner.hpp"

#include <algorithm>
#include <unordered_map>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

/// Iterative Tarjan over dense node ids. Returns the component id per node.
/// A component is numbered after every component reachable from it.
std::vector<int> strongly_connected(const std::vector<std::vector<int>>& adj, int& count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  count = 0;

  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.node].size()) {
        const int w = adj[f.node][f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const int v = f.node;
      if (low[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
    }
  }
  return comp;
}

const std::vector<PropertyInfo>& sorted_by_label(std::vector<PropertyInfo>& props) {
  std::sort(props.begin(), props.end(), [](const PropertyInfo& a, const PropertyInfo& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.iri < b.iri;
  });
  return props;
}

bool intersects(const std::set<Iri>& a, const std::set<Iri>& b) {
  const auto& small = a.size() < b.size() ? a : b;
  const auto& large = a.size() < b.size() ? b : a;
  for (const auto& x : small)
    if (large.count(x)) return true;
  return false;
}

}  // namespace

SubclassClosure SubclassClosure::compute(const SchemaIndex& schema, Diagnostics* diagnostics) {
  std::vector<Iri> ids;
  std::map<Iri, int> id_of;
  for (const auto& [iri, info] : schema.classes()) {
    id_of.emplace(iri, static_cast<int>(ids.size()));
    ids.push_back(iri);
  }
  const int n = static_cast<int>(ids.size());
  std::vector<std::vector<int>> up(n);  // child -> parents
  for (const auto& [child, parent] : schema.subclass_edges())
    up[id_of.at(child)].push_back(id_of.at(parent));

  int comp_count = 0;
  const std::vector<int> comp = strongly_connected(up, comp_count);

  std::vector<std::vector<int>> members(comp_count);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

  // Tarjan finishes a component only after every component it reaches, so
  // parents' components carry lower numbers: process in increasing order.
  std::vector<std::set<int>> comp_ancestors(comp_count);
  for (int c = 0; c < comp_count; ++c) {
    auto& acc = comp_ancestors[c];
    for (int v : members[c]) acc.insert(v);
    for (int v : members[c])
      for (int p : up[v]) {
        const int pc = comp[p];
        if (pc == c) continue;
        acc.insert(comp_ancestors[pc].begin(), comp_ancestors[pc].end());
      }
  }

  SubclassClosure out;
  for (int v = 0; v < n; ++v) {
    std::set<Iri> anc;
    for (int a : comp_ancestors[comp[v]]) anc.insert(ids[a]);
    for (const auto& a : anc) out.descendants_[a].insert(ids[v]);
    out.ancestors_.emplace(ids[v], std::move(anc));
  }
  for (const auto& iri : ids) out.descendants_[iri].insert(iri);

  for (const auto& group : members) {
    if (group.size() < 2) continue;
    std::vector<Iri> cycle;
    for (int v : group) cycle.push_back(ids[v]);
    std::sort(cycle.begin(), cycle.end());
    out.cycles_.push_back(std::move(cycle));
  }
  std::sort(out.cycles_.begin(), out.cycles_.end());
  if (diagnostics)
    for (const auto& cycle : out.cycles_) {
      std::string msg = "mutually subclassed classes treated as equivalent:";
      for (const auto& c : cycle) msg += " <" + c.str() + ">";
      diagnostics->push_back(Diagnostic{Severity::Warning, "reasoner", "subclass-cycle", msg});
    }
  return out;
}

const std::set<Iri>& SubclassClosure::ancestors(const Iri& cls) const {
  auto it = ancestors_.find(cls);
  if (it == ancestors_.end()) throw Error(ErrorCode::UnknownClass, "unknown class <" + cls.str() + ">");
  return it->second;
}

const std::set<Iri>& SubclassClosure::descendants(const Iri& cls) const {
  auto it = descendants_.find(cls);
  if (it == descendants_.end())
    throw Error(ErrorCode::UnknownClass, "unknown class <" + cls.str() + ">");
  return it->second;
}

bool is_subclass_of(const SubclassClosure& closure, const Iri& child, const Iri& parent) {
  const auto& anc = closure.ancestors(child);
  if (!closure.knows(parent))
    throw Error(ErrorCode::UnknownClass, "unknown class <" + parent.str() + ">");
  return anc.count(parent) != 0;
}

bool compatible(const SubclassClosure& closure, const Iri& a, const Iri& b) {
  return closure.ancestors(a).count(b) != 0 || closure.ancestors(b).count(a) != 0;
}

std::vector<PropertyInfo> properties_of(const SchemaIndex& schema, const SubclassClosure& closure,
                                        const Iri& cls) {
  schema.class_info(cls);
  const auto& anc = closure.ancestors(cls);
  std::set<Iri> chosen;
  for (const auto& [iri, p] : schema.properties())
    if (intersects(p.domains, anc)) chosen.insert(iri);
  for (const auto& a : anc)
    for (const auto& [prop, filler] : schema.class_info(a).restriction_props) chosen.insert(prop);
  std::vector<PropertyInfo> out;
  for (const auto& iri : chosen) out.push_back(schema.property_info(iri));
  sorted_by_label(out);
  return out;
}

std::vector<PropertyInfo> incoming_properties_of(const SchemaIndex& schema,
                                                 const SubclassClosure& closure, const Iri& cls) {
  schema.class_info(cls);
  const auto& anc = closure.ancestors(cls);
  std::set<Iri> chosen;
  for (const auto& [iri, p] : schema.properties())
    if (p.kind == PropertyKind::Object && intersects(p.ranges, anc)) chosen.insert(iri);
  for (const auto& [iri, c] : schema.classes())
    for (const auto& [prop, filler] : c.restriction_props)
      if (anc.count(filler)) chosen.insert(prop);
  std::vector<PropertyInfo> out;
  for (const auto& iri : chosen) out.push_back(schema.property_info(iri));
  sorted_by_label(out);
  return out;
}

std::set<Iri> forward_targets(const SchemaIndex& schema, const SubclassClosure& closure,
                              const Iri& cls, const Iri& property) {
  const auto& p = schema.property_info(property);
  std::set<Iri> out;
  if (p.kind == PropertyKind::Object) out = p.ranges;
  for (const auto& a : closure.ancestors(cls))
    for (const auto& [prop, filler] : schema.class_info(a).restriction_props)
      if (prop == property) out.insert(filler);
  return out;
}

std::set<Iri> inverse_targets(const SchemaIndex& schema, const Iri& property) {
  const auto& p = schema.property_info(property);
  std::set<Iri> out = p.domains;
  for (const auto& [iri, c] : schema.classes())
    for (const auto& [prop, filler] : c.restriction_props)
      if (prop == property) out.insert(iri);
  return out;
}

ExtendedInstances instances_of_extended(const SubclassClosure& closure, const Iri& cls,
                                        const GraphRefs& graphs) {
  ExtendedInstances out;
  out.queried_class = cls;
  const auto& subclasses = closure.descendants(cls);
  for (const Graph& g : graphs) {
    g.for_each_match({std::nullopt, vocab::rdf_type(), Term(cls)},
                     [&](const Triple& t) { out.direct.insert(t.subject); });
  }
  for (const auto& sub : subclasses) {
    if (sub == cls) continue;
    for (const Graph& g : graphs) {
      g.for_each_match({std::nullopt, vocab::rdf_type(), Term(sub)}, [&](const Triple& t) {
        if (out.direct.count(t.subject)) return;
        auto [it, inserted] = out.via_subclass.emplace(t.subject, sub);
        if (!inserted && sub < it->second) it->second = sub;
      });
    }
  }
  return out;
}

std::set<Iri> asserted_types(const Term& subject, const GraphRefs& graphs) {
  std::set<Iri> out;
  for (const Graph& g : graphs)
    g.for_each_match({subject, vocab::rdf_type(), std::nullopt}, [&](const Triple& t) {
      if (t.object.is_iri()) out.insert(t.object.iri());
    });
  return out;
}

}  // namespace ontoquery
