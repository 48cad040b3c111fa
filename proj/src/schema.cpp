#include "ontoquery/schema.hpp"

#include <algorithm>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

void ensure_class(std::map<Iri, ClassInfo>& classes, const Iri& iri) {
  if (classes.count(iri)) return;
  ClassInfo info;
  info.iri = iri;
  info.label = iri.local_name();
  classes.emplace(iri, std::move(info));
}

PropertyInfo& ensure_property(std::map<Iri, PropertyInfo>& props, const Iri& iri) {
  auto it = props.find(iri);
  if (it != props.end()) return it->second;
  PropertyInfo info;
  info.iri = iri;
  info.label = iri.local_name();
  return props.emplace(iri, std::move(info)).first->second;
}

/// Smallest string literal value of (subject, predicate) under the first
/// predicate in `predicates` that has any.
std::optional<std::string> first_annotation(const Graph& g, const Iri& subject,
                                            const std::vector<Iri>& predicates) {
  for (const auto& p : predicates) {
    std::optional<std::string> best;
    g.for_each_match({Term(subject), p, std::nullopt}, [&](const Triple& t) {
      if (!t.object.is_literal()) return;
      const auto& lex = t.object.literal().lexical();
      if (!best || lex < *best) best = lex;
    });
    if (best) return best;
  }
  return std::nullopt;
}

std::vector<std::string> all_annotations(const Graph& g, const Iri& subject,
                                         const std::vector<Iri>& predicates) {
  std::vector<std::string> out;
  for (const auto& p : predicates)
    g.for_each_match({Term(subject), p, std::nullopt}, [&](const Triple& t) {
      if (t.object.is_literal()) out.push_back(t.object.literal().lexical());
    });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Term> single_object(const Graph& g, const Term& subject, const Iri& predicate) {
  std::optional<Term> out;
  g.for_each_match({subject, predicate, std::nullopt}, [&](const Triple& t) {
    if (!out || t.object < *out) out = t.object;
  });
  return out;
}

bool has_object(const Graph& g, const Term& subject, const Iri& predicate) {
  bool found = false;
  g.for_each_match({subject, predicate, std::nullopt}, [&](const Triple&) { found = true; });
  return found;
}

}  // namespace

SchemaIndex SchemaIndex::build(const Graph& g, const AnnotationVocabulary& annotations,
                               Diagnostics* diagnostics) {
  auto warn = [&](std::string code, std::string message) {
    if (diagnostics)
      diagnostics->push_back(
          Diagnostic{Severity::Warning, "schema", std::move(code), std::move(message)});
  };

  std::map<Iri, ClassInfo> classes;
  std::map<Iri, PropertyInfo> props;
  std::set<std::pair<Iri, Iri>> edges;

  // Declarations.
  g.for_each_match({std::nullopt, vocab::rdf_type(), std::nullopt}, [&](const Triple& t) {
    if (!t.subject.is_iri() || !t.object.is_iri()) return;
    const Iri& s = t.subject.iri();
    const Iri& o = t.object.iri();
    if (o == vocab::owl_class() || o == vocab::rdfs_class()) {
      ensure_class(classes, s);
      classes.at(s).declared = true;
    } else if (o == vocab::owl_object_property()) {
      ensure_property(props, s).kind = PropertyKind::Object;
    } else if (o == vocab::owl_datatype_property()) {
      ensure_property(props, s).kind = PropertyKind::Data;
    } else if (o == vocab::rdf_property()) {
      ensure_property(props, s);
    }
  });

  // Domains and ranges.
  g.for_each_match({std::nullopt, vocab::rdfs_domain(), std::nullopt}, [&](const Triple& t) {
    if (!t.subject.is_iri() || !t.object.is_iri()) return;
    ensure_property(props, t.subject.iri()).domains.insert(t.object.iri());
  });
  g.for_each_match({std::nullopt, vocab::rdfs_range(), std::nullopt}, [&](const Triple& t) {
    if (!t.subject.is_iri() || !t.object.is_iri()) return;
    auto& p = ensure_property(props, t.subject.iri());
    p.ranges.insert(t.object.iri());
    if (t.object.iri().str().rfind(vocab::kXsd, 0) == 0) p.kind = PropertyKind::Data;
  });
  g.for_each_match({std::nullopt, vocab::oq_sequence_kind(), std::nullopt},
                   [&](const Triple& t) {
                     if (t.subject.is_iri()) ensure_property(props, t.subject.iri()).sequence = true;
                   });

  // Subclass edges and existential restrictions.
  g.for_each_match({std::nullopt, vocab::rdfs_sub_class_of(), std::nullopt}, [&](const Triple& t) {
    if (!t.subject.is_iri()) return;
    const Iri& child = t.subject.iri();
    if (t.object.is_iri()) {
      edges.emplace(child, t.object.iri());
      return;
    }
    if (!t.object.is_blank()) return;
    const Term& node = t.object;
    auto on_prop = single_object(g, node, vocab::owl_on_property());
    if (!on_prop || !on_prop->is_iri()) return;
    const Iri& prop = on_prop->iri();
    if (auto filler = single_object(g, node, vocab::owl_some_values_from())) {
      if (filler->is_iri()) {
        ensure_class(classes, child);
        ensure_property(props, prop);
        classes.at(child).restriction_props.emplace_back(prop, filler->iri());
      } else {
        warn("ignored-restriction", "anonymous someValuesFrom filler on <" + child.str() +
                                        "> via <" + prop.str() + "> ignored");
      }
      return;
    }
    const char* flavour = nullptr;
    if (has_object(g, node, vocab::owl_all_values_from())) flavour = "allValuesFrom";
    else if (has_object(g, node, vocab::owl_cardinality())) flavour = "cardinality";
    else if (has_object(g, node, vocab::owl_min_cardinality())) flavour = "minCardinality";
    else if (has_object(g, node, vocab::owl_max_cardinality())) flavour = "maxCardinality";
    else if (has_object(g, node, vocab::owl_has_value())) flavour = "hasValue";
    warn("ignored-restriction", std::string(flavour ? flavour : "unrecognised") +
                                    " restriction on <" + child.str() + "> via <" + prop.str() +
                                    "> ignored");
  });

  SchemaIndex out = from_parts(std::move(classes), std::move(props), std::move(edges));

  // Annotations, after auto-registration so referenced classes get labels too.
  for (auto& [iri, info] : out.classes_) {
    if (auto l = first_annotation(g, iri, annotations.label)) info.label = *l;
    info.description = first_annotation(g, iri, annotations.description);
    info.alt_labels = all_annotations(g, iri, annotations.alt_label);
  }
  for (auto& [iri, info] : out.properties_)
    if (auto l = first_annotation(g, iri, annotations.label)) info.label = *l;
  return out;
}

SchemaIndex SchemaIndex::from_parts(std::map<Iri, ClassInfo> classes,
                                    std::map<Iri, PropertyInfo> properties,
                                    std::set<std::pair<Iri, Iri>> edges) {
  // Every referenced class gets an entry.
  for (const auto& [child, parent] : edges) {
    ensure_class(classes, child);
    ensure_class(classes, parent);
  }
  for (auto& [iri, p] : properties) {
    if (p.kind == PropertyKind::Object)
      for (const auto& r : p.ranges) {
        if (datatype_from_iri(r) || r.str().rfind(vocab::kXsd, 0) == 0) {
          p.kind = PropertyKind::Data;
          break;
        }
      }
    for (const auto& d : p.domains) ensure_class(classes, d);
    if (p.kind == PropertyKind::Object)
      for (const auto& r : p.ranges) ensure_class(classes, r);
  }
  std::vector<Iri> fillers;
  for (auto& [iri, c] : classes) {
    std::sort(c.restriction_props.begin(), c.restriction_props.end());
    c.restriction_props.erase(
        std::unique(c.restriction_props.begin(), c.restriction_props.end()),
        c.restriction_props.end());
    for (const auto& [prop, filler] : c.restriction_props) {
      fillers.push_back(filler);
      ensure_property(properties, prop);
    }
  }
  for (const auto& f : fillers) ensure_class(classes, f);

  SchemaIndex out;
  out.classes_ = std::move(classes);
  out.properties_ = std::move(properties);
  out.edges_ = std::move(edges);
  return out;
}

const ClassInfo* SchemaIndex::find_class(const Iri& iri) const {
  auto it = classes_.find(iri);
  return it == classes_.end() ? nullptr : &it->second;
}

const ClassInfo& SchemaIndex::class_info(const Iri& iri) const {
  if (const auto* c = find_class(iri)) return *c;
  throw Error(ErrorCode::UnknownClass, "unknown class <" + iri.str() + ">");
}

const PropertyInfo* SchemaIndex::find_property(const Iri& iri) const {
  auto it = properties_.find(iri);
  return it == properties_.end() ? nullptr : &it->second;
}

const PropertyInfo& SchemaIndex::property_info(const Iri& iri) const {
  if (const auto* p = find_property(iri)) return *p;
  throw Error(ErrorCode::UnknownSymbol, "unknown property <" + iri.str() + ">");
}

}  // namespace ontoquery
