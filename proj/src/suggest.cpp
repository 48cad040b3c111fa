#include "ontoquery/suggest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "ontoquery/error.hpp"

namespace ontoquery {

std::string_view direction_name(Direction d) noexcept {
  return d == Direction::Forward ? "forward" : "inverse";
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "forward" || text == "outgoing") return Direction::Forward;
  if (text == "inverse" || text == "incoming") return Direction::Inverse;
  return std::nullopt;
}

std::string normalize_for_match(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

Annotation annotate(const SchemaIndex& schema, const SubclassClosure& closure, const Iri& cls) {
  const ClassInfo& info = schema.class_info(cls);
  Annotation a;
  a.description = info.description;
  a.alt_labels = info.alt_labels;
  for (const auto& p : properties_of(schema, closure, cls)) a.properties.push_back(p.label);
  return a;
}

std::vector<Suggestion> suggest_concepts(const SchemaIndex& schema, const SubclassClosure& closure,
                                         std::string_view prefix, std::size_t limit) {
  const std::string needle = normalize_for_match(prefix);
  if (needle.empty()) throw Error(ErrorCode::InvalidArgument, "suggestion prefix must be non-empty");
  if (limit == 0) throw Error(ErrorCode::InvalidArgument, "suggestion limit must be positive");

  auto starts = [&](const std::string& text) {
    return normalize_for_match(text).rfind(needle, 0) == 0;
  };

  std::vector<Suggestion> hits;
  for (const auto& [iri, info] : schema.classes()) {
    Suggestion s;
    s.class_iri = iri;
    s.label = info.label;
    if (starts(info.label)) {
      s.match_kind = MatchKind::Label;
      s.matched_text = info.label;
    } else {
      std::optional<std::string> best;
      for (const auto& alt : info.alt_labels)
        if (starts(alt) && (!best || std::make_pair(alt.size(), alt) <
                                         std::make_pair(best->size(), *best)))
          best = alt;
      if (!best) continue;
      s.match_kind = MatchKind::AltLabel;
      s.matched_text = *best;
    }
    hits.push_back(std::move(s));
  }
  auto key = [](const Suggestion& s) {
    return std::make_tuple(s.match_kind, s.matched_text.size(), std::cref(s.matched_text),
                           std::cref(s.class_iri));
  };
  std::sort(hits.begin(), hits.end(),
            [&](const Suggestion& a, const Suggestion& b) { return key(a) < key(b); });
  if (hits.size() > limit) hits.resize(limit);
  for (auto& s : hits) s.annotation = annotate(schema, closure, s.class_iri);
  return hits;
}

std::vector<PropertyInfo> suggest_relations(const SchemaIndex& schema,
                                            const SubclassClosure& closure, const Iri& cls,
                                            Direction direction) {
  return direction == Direction::Forward ? properties_of(schema, closure, cls)
                                         : incoming_properties_of(schema, closure, cls);
}

std::vector<SchemaEdge> schema_edges(const SchemaIndex& schema) {
  std::vector<SchemaEdge> edges;
  for (const auto& [iri, p] : schema.properties()) {
    if (p.kind != PropertyKind::Object) continue;
    for (const auto& d : p.domains)
      for (const auto& r : p.ranges) edges.push_back({d, iri, r});
  }
  for (const auto& [iri, c] : schema.classes())
    for (const auto& [prop, filler] : c.restriction_props) edges.push_back({iri, prop, filler});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

namespace {

class PathSearch {
 public:
  PathSearch(const SchemaIndex& schema, const SubclassClosure& closure, const Iri& to,
             std::size_t max_length, std::stop_token stop)
      : closure_(closure),
        edges_(schema_edges(schema)),
        target_(to),
        max_length_(max_length),
        stop_(std::move(stop)) {}

  std::vector<SchemaPath> run(const Iri& from) {
    visited_.push_back(from);
    extend(from);
    return std::move(found_);
  }

 private:
  void extend(const Iri& current) {
    if (stop_.stop_requested() || path_.steps.size() == max_length_) return;
    // Distinct schema edges can induce the same move.
    std::set<std::tuple<Iri, Direction, Iri>> moves;
    for (const auto& e : edges_) {
      if (compatible(closure_, current, e.subject))
        moves.emplace(e.property, Direction::Forward, e.object);
      if (compatible(closure_, current, e.object))
        moves.emplace(e.property, Direction::Inverse, e.subject);
    }
    for (const auto& [property, dir, next] : moves) step(current, property, dir, next);
  }

  void step(const Iri& current, const Iri& property, Direction dir, const Iri& next) {
    if (std::find(visited_.begin(), visited_.end(), next) != visited_.end()) return;
    path_.steps.push_back({current, property, next, dir});
    visited_.push_back(next);
    if (closure_.ancestors(next).count(target_))
      found_.push_back(path_);
    else
      extend(next);
    visited_.pop_back();
    path_.steps.pop_back();
  }

  const SubclassClosure& closure_;
  std::vector<SchemaEdge> edges_;
  Iri target_;
  std::size_t max_length_;
  std::stop_token stop_;
  SchemaPath path_;
  std::vector<Iri> visited_;
  std::vector<SchemaPath> found_;
};

}  // namespace

std::vector<SchemaPath> discover_paths(const SchemaIndex& schema, const SubclassClosure& closure,
                                       const Iri& from, const Iri& to, std::size_t max_length,
                                       std::stop_token stop) {
  schema.class_info(from);
  schema.class_info(to);
  if (max_length == 0 || max_length > kPathMaxLengthCap)
    throw Error(ErrorCode::InvalidArgument, "path length limit must be between 1 and 8");
  if (closure.ancestors(from).count(to)) return {SchemaPath{}};

  auto paths = PathSearch(schema, closure, to, max_length, std::move(stop)).run(from);

  auto key = [&](const SchemaPath& p) {
    std::vector<std::string> k;
    k.reserve(p.steps.size() * 5);
    for (const auto& s : p.steps) {
      k.push_back(schema.property_info(s.property).label);
      k.emplace_back(direction_name(s.direction));
      k.push_back(schema.class_info(s.to).label);
      k.push_back(s.property.str());
      k.push_back(s.to.str());
    }
    return k;
  };
  std::vector<std::pair<std::vector<std::string>, SchemaPath>> keyed;
  keyed.reserve(paths.size());
  for (auto& p : paths) keyed.emplace_back(key(p), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.length() != b.second.length()) return a.second.length() < b.second.length();
    return a.first < b.first;
  });
  std::vector<SchemaPath> out;
  out.reserve(keyed.size());
  for (auto& [k, p] : keyed) out.push_back(std::move(p));
  return out;
}

}  // namespace ontoquery
