#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontoquery/diagnostics.hpp"
#include "ontoquery/graph.hpp"

namespace ontoquery {

struct ClassInfo {
  Iri iri;
  std::string label;  // local name when no label triple exists
  std::optional<std::string> description;
  std::vector<std::string> alt_labels;
  /// (property, filler class) pairs from existential restrictions.
  std::vector<std::pair<Iri, Iri>> restriction_props;
  bool declared = false;  // false when auto-registered from a reference
};

enum class PropertyKind { Object, Data };

struct PropertyInfo {
  Iri iri;
  std::string label;
  PropertyKind kind = PropertyKind::Object;
  std::set<Iri> domains;
  /// Class IRIs for object properties, XSD datatype IRIs for data properties.
  std::set<Iri> ranges;
  /// Marked as carrying nucleotide sequences (enrichment candidate).
  bool sequence = false;
};

/// Which annotation predicates feed labels, descriptions and alternate
/// labels. Earlier entries win when several are present.
struct AnnotationVocabulary {
  std::vector<Iri> label{vocab::rdfs_label(), vocab::skos_pref_label()};
  std::vector<Iri> description{vocab::rdfs_comment(), vocab::skos_definition()};
  std::vector<Iri> alt_label{vocab::skos_alt_label()};
};

class SchemaIndex {
 public:
  SchemaIndex() = default;

  /// Tolerant build: unknown predicates are ignored, unsupported
  /// restriction flavours produce warnings.
  static SchemaIndex build(const Graph& schema, const AnnotationVocabulary& annotations = {},
                           Diagnostics* diagnostics = nullptr);

  const std::map<Iri, ClassInfo>& classes() const noexcept { return classes_; }
  const std::map<Iri, PropertyInfo>& properties() const noexcept { return properties_; }
  /// Direct (child, parent) subclass edges between named classes.
  const std::set<std::pair<Iri, Iri>>& subclass_edges() const noexcept { return edges_; }

  bool has_class(const Iri& iri) const { return classes_.count(iri) != 0; }
  const ClassInfo* find_class(const Iri& iri) const;
  /// Throws Error(UnknownClass).
  const ClassInfo& class_info(const Iri& iri) const;

  const PropertyInfo* find_property(const Iri& iri) const;
  /// Throws Error(UnknownSymbol).
  const PropertyInfo& property_info(const Iri& iri) const;

  /// Builds an index directly; used by generators in tests and tools.
  static SchemaIndex from_parts(std::map<Iri, ClassInfo> classes,
                                std::map<Iri, PropertyInfo> properties,
                                std::set<std::pair<Iri, Iri>> edges);

 private:
  std::map<Iri, ClassInfo> classes_;
  std::map<Iri, PropertyInfo> properties_;
  std::set<std::pair<Iri, Iri>> edges_;
};

}  // namespace ontoquery
