#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ontoquery/diagnostics.hpp"
#include "ontoquery/graph.hpp"
#include "ontoquery/schema.hpp"

namespace ontoquery {

using GraphRefs = std::vector<std::reference_wrapper<const Graph>>;

/// Reflexive-transitive closure of the subclass edges. Classes that are
/// mutually subclassed form a cycle group; every member is an ancestor of
/// every other.
class SubclassClosure {
 public:
  SubclassClosure() = default;

  static SubclassClosure compute(const SchemaIndex& schema, Diagnostics* diagnostics = nullptr);

  bool knows(const Iri& cls) const { return ancestors_.count(cls) != 0; }
  /// Includes `cls` itself. Throws Error(UnknownClass).
  const std::set<Iri>& ancestors(const Iri& cls) const;
  /// Includes `cls` itself. Throws Error(UnknownClass).
  const std::set<Iri>& descendants(const Iri& cls) const;

  const std::map<Iri, std::set<Iri>>& reachable() const noexcept { return ancestors_; }
  /// Groups of size > 1, each sorted; groups sorted by first member.
  const std::vector<std::vector<Iri>>& cycles() const noexcept { return cycles_; }

 private:
  std::map<Iri, std::set<Iri>> ancestors_;
  std::map<Iri, std::set<Iri>> descendants_;
  std::vector<std::vector<Iri>> cycles_;
};

/// Throws Error(UnknownClass) naming whichever argument is unknown.
bool is_subclass_of(const SubclassClosure& closure, const Iri& child, const Iri& parent);

/// Classes are "subclass-compatible" when either subsumes the other.
bool compatible(const SubclassClosure& closure, const Iri& a, const Iri& b);

/// Properties applicable to instances of `cls`: declared domain meets the
/// ancestor set, or an existential restriction on `cls` or an ancestor
/// attaches the property. Ordered by label, then IRI.
std::vector<PropertyInfo> properties_of(const SchemaIndex& schema, const SubclassClosure& closure,
                                        const Iri& cls);

/// Properties whose values may be instances of `cls`: declared range meets
/// the ancestor set, or some restriction uses the property with a filler
/// in the ancestor set. Object properties only. Ordered by label, then IRI.
std::vector<PropertyInfo> incoming_properties_of(const SchemaIndex& schema,
                                                 const SubclassClosure& closure, const Iri& cls);

/// Classes a forward step along `property` from `cls` may reach: declared
/// ranges plus restriction fillers attached to `cls` or its ancestors.
/// Empty means unconstrained.
std::set<Iri> forward_targets(const SchemaIndex& schema, const SubclassClosure& closure,
                              const Iri& cls, const Iri& property);

/// Classes an inverse step along `property` may reach: declared domains
/// plus classes carrying a restriction on `property`. Empty means
/// unconstrained.
std::set<Iri> inverse_targets(const SchemaIndex& schema, const Iri& property);

struct ExtendedInstances {
  Iri queried_class;
  /// Asserted directly under the queried class.
  std::set<Term> direct;
  /// Admitted only via a proper subclass; value is the (smallest) witness.
  std::map<Term, Iri> via_subclass;

  bool contains(const Term& t) const { return direct.count(t) || via_subclass.count(t); }
  std::size_t size() const { return direct.size() + via_subclass.size(); }
};

/// Instances of `cls` and all its subclasses across `graphs`, computed on
/// demand from type assertions. Throws Error(UnknownClass).
ExtendedInstances instances_of_extended(const SubclassClosure& closure, const Iri& cls,
                                        const GraphRefs& graphs);

/// All rdf:type objects asserted for `subject` across `graphs`.
std::set<Iri> asserted_types(const Term& subject, const GraphRefs& graphs);

}  // namespace ontoquery
