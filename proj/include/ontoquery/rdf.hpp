#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ontoquery {

/// Absolute IRI. Construction validates: non-empty, contains a scheme
/// separator, no whitespace or angle brackets.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  /// Fragment or last path segment; used as the fallback label.
  std::string local_name() const;

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

bool is_valid_iri(std::string_view text) noexcept;

enum class Datatype { String, Decimal, Integer, Boolean };

std::string_view datatype_name(Datatype dt) noexcept;  // "decimal", ...
const Iri& datatype_iri(Datatype dt);
/// Maps an XSD datatype IRI to one of the supported datatypes.
std::optional<Datatype> datatype_from_iri(const Iri& iri);
std::optional<Datatype> datatype_from_name(std::string_view name);
inline bool is_numeric(Datatype dt) noexcept {
  return dt == Datatype::Decimal || dt == Datatype::Integer;
}

class Literal {
 public:
  Literal() = default;
  /// Throws Error(DatatypeMismatch) when the lexical form does not parse
  /// under a numeric or boolean datatype.
  Literal(std::string lexical, Datatype datatype);

  static Literal string(std::string s) { return {std::move(s), Datatype::String}; }
  static Literal decimal(std::string_view lexical) { return {std::string(lexical), Datatype::Decimal}; }
  static Literal integer(long long v) { return {std::to_string(v), Datatype::Integer}; }

  const std::string& lexical() const noexcept { return lexical_; }
  Datatype datatype() const noexcept { return datatype_; }
  /// Present iff the datatype is decimal or integer.
  const std::optional<double>& numeric_value() const noexcept { return numeric_; }

  bool operator==(const Literal& o) const noexcept {
    return datatype_ == o.datatype_ && lexical_ == o.lexical_;
  }
  std::strong_ordering operator<=>(const Literal& o) const noexcept {
    if (auto c = lexical_ <=> o.lexical_; c != 0) return c;
    return datatype_ <=> o.datatype_;
  }

 private:
  std::string lexical_;
  Datatype datatype_ = Datatype::String;
  std::optional<double> numeric_;
};

struct BlankNode {
  std::string label;
  auto operator<=>(const BlankNode&) const = default;
};

/// An RDF term: exactly one of IRI, literal, blank node.
class Term {
 public:
  Term() : value_(Iri{}) {}
  Term(Iri iri) : value_(std::move(iri)) {}
  Term(Literal lit) : value_(std::move(lit)) {}
  Term(BlankNode b) : value_(std::move(b)) {}

  bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }
  bool is_blank() const noexcept { return std::holds_alternative<BlankNode>(value_); }

  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }
  const BlankNode& blank() const { return std::get<BlankNode>(value_); }

  /// N-Triples style rendering: <iri>, _:label, "lex"^^<dt>. Injective, and
  /// the basis of deterministic ordering everywhere.
  std::string to_string() const;

  bool operator==(const Term&) const = default;
  std::strong_ordering operator<=>(const Term& o) const;

 private:
  std::variant<Iri, Literal, BlankNode> value_;
};

struct Triple {
  Term subject;   // IRI or blank
  Iri predicate;
  Term object;

  bool operator==(const Triple&) const = default;
  std::strong_ordering operator<=>(const Triple& o) const;
};

/// Checks the subject/predicate invariants; throws Error(InvalidArgument).
Triple make_triple(Term subject, Iri predicate, Term object);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
/// Project vocabulary for schema annotations the standard vocabularies lack.
inline constexpr std::string_view kOq = "http://ontoquery.org/vocab#";

const Iri& rdf_type();
const Iri& rdfs_sub_class_of();
const Iri& rdfs_label();
const Iri& rdfs_comment();
const Iri& rdfs_domain();
const Iri& rdfs_range();
const Iri& rdfs_class();
const Iri& rdf_property();
const Iri& owl_class();
const Iri& owl_object_property();
const Iri& owl_datatype_property();
const Iri& owl_restriction();
const Iri& owl_on_property();
const Iri& owl_some_values_from();
const Iri& owl_all_values_from();
const Iri& owl_cardinality();
const Iri& owl_min_cardinality();
const Iri& owl_max_cardinality();
const Iri& owl_has_value();
const Iri& skos_alt_label();
const Iri& skos_pref_label();
const Iri& skos_definition();
const Iri& oq_sequence_kind();
}  // namespace vocab

}  // namespace ontoquery

template <>
struct std::hash<ontoquery::Iri> {
  std::size_t operator()(const ontoquery::Iri& i) const noexcept {
    return std::hash<std::string>{}(i.str());
  }
};
