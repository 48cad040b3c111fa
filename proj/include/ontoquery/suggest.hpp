#pragma once

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "ontoquery/reasoner.hpp"
#include "ontoquery/schema.hpp"

namespace ontoquery {

inline constexpr std::size_t kDefaultSuggestionLimit = 20;
inline constexpr std::size_t kDefaultPathMaxLength = 6;
inline constexpr std::size_t kPathMaxLengthCap = 8;

enum class Direction { Forward, Inverse };
std::string_view direction_name(Direction d) noexcept;  // "forward" / "inverse"
/// Accepts "forward"/"outgoing" and "inverse"/"incoming".
std::optional<Direction> parse_direction(std::string_view text);

enum class MatchKind { Label, AltLabel };

struct Annotation {
  std::optional<std::string> description;
  std::vector<std::string> alt_labels;
  std::vector<std::string> properties;  // labels, as ordered by properties_of

  bool operator==(const Annotation&) const = default;
};

struct Suggestion {
  Iri class_iri;
  std::string label;         // preferred label of the class
  MatchKind match_kind = MatchKind::Label;
  std::string matched_text;  // the label or alternate label that matched
  Annotation annotation;
};

/// Lowercases ASCII, trims and collapses whitespace runs.
std::string normalize_for_match(std::string_view text);

/// Classes whose label or an alternate label starts with `prefix`
/// (case-insensitive, whitespace-normalized). Ranked label matches first,
/// then shorter matched text, then lexicographically; truncated to `limit`.
/// Throws Error(InvalidArgument) for an empty prefix or zero limit.
std::vector<Suggestion> suggest_concepts(const SchemaIndex& schema, const SubclassClosure& closure,
                                         std::string_view prefix,
                                         std::size_t limit = kDefaultSuggestionLimit);

Annotation annotate(const SchemaIndex& schema, const SubclassClosure& closure, const Iri& cls);

/// Outgoing: properties_of(cls). Incoming: incoming_properties_of(cls).
std::vector<PropertyInfo> suggest_relations(const SchemaIndex& schema,
                                            const SubclassClosure& closure, const Iri& cls,
                                            Direction direction);

struct PathStep {
  Iri from;
  Iri property;
  Iri to;
  Direction direction = Direction::Forward;

  bool operator==(const PathStep&) const = default;
};

struct SchemaPath {
  std::vector<PathStep> steps;
  std::size_t length() const noexcept { return steps.size(); }
  bool operator==(const SchemaPath&) const = default;
};

/// A schema-level relation edge (domain-side class, property, range-side
/// class) from declared domain x range pairs or an existential restriction.
struct SchemaEdge {
  Iri subject;
  Iri property;
  Iri object;
  auto operator<=>(const SchemaEdge&) const = default;
};

std::vector<SchemaEdge> schema_edges(const SchemaIndex& schema);

/// All simple paths (no class visited twice) from `from` to a class
/// subsumed by `to`, of at most `max_length` steps. A step crosses an edge
/// forward when the current class is subclass-compatible with its subject,
/// or inverse when compatible with its object. Ordered by length, then by
/// the per-step (property label, direction, target label) sequence.
///
/// When `stop` is requested enumeration ends early and the paths found so
/// far are returned. Throws Error(UnknownClass) / Error(InvalidArgument)
/// for max_length outside [1, 8].
std::vector<SchemaPath> discover_paths(const SchemaIndex& schema, const SubclassClosure& closure,
                                       const Iri& from, const Iri& to,
                                       std::size_t max_length = kDefaultPathMaxLength,
                                       std::stop_token stop = {});

}  // namespace ontoquery
