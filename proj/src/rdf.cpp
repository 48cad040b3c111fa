#include "ontoquery/rdf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "ontoquery/error.hpp"

namespace ontoquery {

bool is_valid_iri(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  // Scheme: ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\')
      return false;
  }
  return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid_iri(value_))
    throw Error(ErrorCode::MalformedIri, "malformed IRI '" + value_ + "'");
}

std::string Iri::local_name() const {
  auto pos = value_.find_last_of("#/");
  if (pos == std::string::npos || pos + 1 == value_.size()) {
    auto colon = value_.rfind(':');
    return colon == std::string::npos ? value_ : value_.substr(colon + 1);
  }
  return value_.substr(pos + 1);
}

namespace {

constexpr std::array<std::string_view, 4> kDatatypeNames = {"string", "decimal",
                                                            "integer", "boolean"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<double> parse_numeric(std::string_view lex, Datatype dt) {
  std::string_view body = lex;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.remove_prefix(1);
  if (dt == Datatype::Integer) {
    if (!all_digits(body)) return std::nullopt;
  } else {
    auto dot = body.find('.');
    if (dot == std::string_view::npos) {
      if (!all_digits(body)) return std::nullopt;
    } else {
      auto ip = body.substr(0, dot);
      auto fp = body.substr(dot + 1);
      if (ip.empty() && fp.empty()) return std::nullopt;
      if (!ip.empty() && !all_digits(ip)) return std::nullopt;
      if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    }
  }
  // from_chars rejects a leading '+'.
  std::string_view digits = lex;
  if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    // ".5" style forms are valid xsd:decimal but not accepted by from_chars.
    std::string padded(digits);
    const bool neg = !padded.empty() && padded[0] == '-';
    if (neg) padded.erase(0, 1);
    if (!padded.empty() && padded[0] == '.') padded.insert(0, "0");
    if (!padded.empty() && padded.back() == '.') padded.push_back('0');
    auto [p2, e2] = std::from_chars(padded.data(), padded.data() + padded.size(), v);
    if (e2 != std::errc{} || p2 != padded.data() + padded.size()) return std::nullopt;
    if (neg) v = -v;
  }
  return v;
}

}  // namespace

std::string_view datatype_name(Datatype dt) noexcept {
  return kDatatypeNames[static_cast<std::size_t>(dt)];
}

const Iri& datatype_iri(Datatype dt) {
  static const std::array<Iri, 4> iris = {
      Iri(std::string(vocab::kXsd) + "string"), Iri(std::string(vocab::kXsd) + "decimal"),
      Iri(std::string(vocab::kXsd) + "integer"), Iri(std::string(vocab::kXsd) + "boolean")};
  return iris[static_cast<std::size_t>(dt)];
}

std::optional<Datatype> datatype_from_iri(const Iri& iri) {
  const auto& s = iri.str();
  if (s.rfind(vocab::kXsd, 0) != 0) return std::nullopt;
  return datatype_from_name(std::string_view(s).substr(vocab::kXsd.size()));
}

std::optional<Datatype> datatype_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDatatypeNames.size(); ++i)
    if (kDatatypeNames[i] == name) return static_cast<Datatype>(i);
  return std::nullopt;
}

Literal::Literal(std::string lexical, Datatype datatype)
    : lexical_(std::move(lexical)), datatype_(datatype) {
  switch (datatype_) {
    case Datatype::Decimal:
    case Datatype::Integer:
      numeric_ = parse_numeric(lexical_, datatype_);
      if (!numeric_)
        throw Error(ErrorCode::DatatypeMismatch,
                    "'" + lexical_ + "' is not a valid " +
                        std::string(datatype_name(datatype_)));
      break;
    case Datatype::Boolean:
      if (lexical_ != "true" && lexical_ != "false" && lexical_ != "1" && lexical_ != "0")
        throw Error(ErrorCode::DatatypeMismatch, "'" + lexical_ + "' is not a valid boolean");
      break;
    case Datatype::String:
      break;
  }
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  if (is_iri()) {
    out.reserve(iri().str().size() + 2);
    out += '<';
    out += iri().str();
    out += '>';
  } else if (is_blank()) {
    out = "_:" + blank().label;
  } else {
    const auto& lit = literal();
    out += '"';
    append_escaped(out, lit.lexical());
    out += "\"^^<";
    out += datatype_iri(lit.datatype()).str();
    out += '>';
  }
  return out;
}

namespace {

// Compares a+term against b+term without allocating.
std::strong_ordering compare_terminated(std::string_view a, std::string_view b, char term) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i])
      return static_cast<unsigned char>(a[i]) <=> static_cast<unsigned char>(b[i]);
  if (a.size() == b.size()) return std::strong_ordering::equal;
  const auto next = static_cast<unsigned char>(a.size() > n ? a[n] : b[n]);
  const auto t = static_cast<unsigned char>(term);
  if (a.size() > n) return next <=> t;
  return t <=> next;
}

int kind_rank(const Term& t) {
  // Matches the first byte of the rendering: '"' < '<' < '_'.
  if (t.is_literal()) return 0;
  if (t.is_iri()) return 1;
  return 2;
}

}  // namespace

// Ordering agrees with lexicographic comparison of to_string().
std::strong_ordering Term::operator<=>(const Term& o) const {
  const int ka = kind_rank(*this), kb = kind_rank(o);
  if (ka != kb) return ka <=> kb;
  if (is_iri()) return compare_terminated(iri().str(), o.iri().str(), '>');
  if (is_blank()) return blank().label <=> o.blank().label;
  return to_string() <=> o.to_string();
}

std::strong_ordering Triple::operator<=>(const Triple& o) const {
  if (auto c = subject <=> o.subject; c != 0) return c;
  if (auto c = predicate <=> o.predicate; c != 0) return c;
  return object <=> o.object;
}

Triple make_triple(Term subject, Iri predicate, Term object) {
  if (subject.is_literal())
    throw Error(ErrorCode::InvalidArgument, "literal in subject position");
  if (predicate.empty())
    throw Error(ErrorCode::InvalidArgument, "empty predicate");
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  if (t.is_iri()) return std::hash<std::string>{}(t.iri().str());
  if (t.is_blank()) return std::hash<std::string>{}(t.blank().label) * 31 + 1;
  return std::hash<std::string>{}(t.literal().lexical()) * 131 +
         static_cast<std::size_t>(t.literal().datatype()) + 7;
}

namespace vocab {
namespace {
Iri make(std::string_view ns, std::string_view local) {
  return Iri(std::string(ns) + std::string(local));
}
}  // namespace

#define ONTOQUERY_VOCAB_TERM(fn, ns, local) \
  const Iri& fn() {                         \
    static const Iri iri = make(ns, local); \
    return iri;                             \
  }

ONTOQUERY_VOCAB_TERM(rdf_type, kRdf, "type")
ONTOQUERY_VOCAB_TERM(rdfs_sub_class_of, kRdfs, "subClassOf")
ONTOQUERY_VOCAB_TERM(rdfs_label, kRdfs, "label")
ONTOQUERY_VOCAB_TERM(rdfs_comment, kRdfs, "comment")
ONTOQUERY_VOCAB_TERM(rdfs_domain, kRdfs, "domain")
ONTOQUERY_VOCAB_TERM(rdfs_range, kRdfs, "range")
ONTOQUERY_VOCAB_TERM(rdfs_class, kRdfs, "Class")
ONTOQUERY_VOCAB_TERM(rdf_property, kRdf, "Property")
ONTOQUERY_VOCAB_TERM(owl_class, kOwl, "Class")
ONTOQUERY_VOCAB_TERM(owl_object_property, kOwl, "ObjectProperty")
ONTOQUERY_VOCAB_TERM(owl_datatype_property, kOwl, "DatatypeProperty")
ONTOQUERY_VOCAB_TERM(owl_restriction, kOwl, "Restriction")
ONTOQUERY_VOCAB_TERM(owl_on_property, kOwl, "onProperty")
ONTOQUERY_VOCAB_TERM(owl_some_values_from, kOwl, "someValuesFrom")
ONTOQUERY_VOCAB_TERM(owl_all_values_from, kOwl, "allValuesFrom")
ONTOQUERY_VOCAB_TERM(owl_cardinality, kOwl, "cardinality")
ONTOQUERY_VOCAB_TERM(owl_min_cardinality, kOwl, "minCardinality")
ONTOQUERY_VOCAB_TERM(owl_max_cardinality, kOwl, "maxCardinality")
ONTOQUERY_VOCAB_TERM(owl_has_value, kOwl, "hasValue")
ONTOQUERY_VOCAB_TERM(skos_alt_label, kSkos, "altLabel")
ONTOQUERY_VOCAB_TERM(skos_pref_label, kSkos, "prefLabel")
ONTOQUERY_VOCAB_TERM(skos_definition, kSkos, "definition")
ONTOQUERY_VOCAB_TERM(oq_sequence_kind, kOq, "sequenceKind")

#undef ONTOQUERY_VOCAB_TERM
}  // namespace vocab

}  // namespace ontoquery
