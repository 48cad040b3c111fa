#include <doctest.h>

#include "fixture.hpp"
#include "oracles.hpp"
#include "ontoquery/error.hpp"
#include "ontoquery/suggest.hpp"

using namespace ontoquery;
using fixture::pe;

TEST_SUITE("suggest") {
  TEST_CASE("prefix matching over labels and alternate labels") {
    const auto kb = fixture::knowledge_base();
    const auto s = suggest_concepts(kb->schema(), kb->closure(), "  CELL  clo");
    REQUIRE(s.size() == 1);
    CHECK(s[0].class_iri == pe("CellCloning"));
    CHECK(s[0].match_kind == MatchKind::Label);
    CHECK(s[0].annotation.properties == std::vector<std::string>{"has output value", "preceded by"});

    const auto alt = suggest_concepts(kb->schema(), kb->closure(), "therap");
    REQUIRE(alt.size() == 1);
    CHECK(alt[0].class_iri == pe("Drug"));
    CHECK(alt[0].match_kind == MatchKind::AltLabel);
    CHECK(alt[0].matched_text == "therapeutic agent");
    CHECK(alt[0].label == "drug");
  }

  TEST_CASE("ranking puts label matches first, then shorter text") {
    const auto kb = fixture::knowledge_base();
    const auto s = suggest_concepts(kb->schema(), kb->closure(), "t");
    REQUIRE(s.size() >= 3);
    CHECK(s[0].label == "transfection");
    bool seen_alt = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].match_kind == MatchKind::AltLabel) seen_alt = true;
      else CHECK_FALSE(seen_alt);
      if (i > 0 && s[i].match_kind == s[i - 1].match_kind)
        CHECK(s[i - 1].matched_text.size() <= s[i].matched_text.size());
    }
    CHECK(suggest_concepts(kb->schema(), kb->closure(), "t", 2).size() == 2);
  }

  TEST_CASE("no match and invalid arguments") {
    const auto kb = fixture::knowledge_base();
    CHECK(suggest_concepts(kb->schema(), kb->closure(), "zzz").empty());
    CHECK_THROWS_AS(suggest_concepts(kb->schema(), kb->closure(), "   "), Error);
    CHECK_THROWS_AS(suggest_concepts(kb->schema(), kb->closure(), "gene", 0), Error);
  }

  TEST_CASE("annotation") {
    const auto kb = fixture::knowledge_base();
    const Annotation a = annotate(kb->schema(), kb->closure(), pe("TcruziSample"));
    CHECK(a.description.has_value());
    CHECK(a.alt_labels == std::vector<std::string>{"parasite sample"});
    CHECK(a.properties == std::vector<std::string>{"has strain status"});
  }

  TEST_CASE("relations by direction") {
    const auto kb = fixture::knowledge_base();
    const auto out = suggest_relations(kb->schema(), kb->closure(), pe("Gene"), Direction::Forward);
    std::vector<std::string> labels;
    for (const auto& p : out) labels.push_back(p.label);
    CHECK(labels == std::vector<std::string>{"has log base 2 ratio", "has oligonucleotide",
                                             "has primer", "is homologous to"});
    const auto in = suggest_relations(kb->schema(), kb->closure(), pe("Gene"), Direction::Inverse);
    labels.clear();
    for (const auto& p : in) labels.push_back(p.label);
    CHECK(labels == std::vector<std::string>{"has parameter", "is homologous to"});
    CHECK(parse_direction("incoming") == Direction::Inverse);
    CHECK(parse_direction("outgoing") == Direction::Forward);
    CHECK_FALSE(parse_direction("sideways").has_value());
  }

  TEST_CASE("path discovery agrees with depth-first enumeration") {
    const auto kb = fixture::knowledge_base();
    for (std::size_t max : {1u, 3u, 6u}) {
      const auto paths =
          discover_paths(kb->schema(), kb->closure(), pe("Gene"), pe("TcruziSample"), max);
      std::set<std::vector<oracle::StepKey>> got;
      for (const auto& p : paths) {
        CHECK(p.length() <= max);
        got.insert(oracle::path_key(p));
      }
      CHECK(got.size() == paths.size());
      CHECK(got == oracle::dfs_paths(kb->schema(), pe("Gene"), pe("TcruziSample"), max));
    }
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
      const SchemaIndex s = oracle::random_schema(rng, {3, 12, false});
      const SubclassClosure c = SubclassClosure::compute(s);
      const Iri from = s.classes().begin()->first, to = s.classes().rbegin()->first;
      std::set<std::vector<oracle::StepKey>> got;
      for (const auto& p : discover_paths(s, c, from, to, 3)) got.insert(oracle::path_key(p));
      CHECK(got == oracle::dfs_paths(s, from, to, 3));
    }
  }

  TEST_CASE("the knockout chain is found as one path") {
    const auto kb = fixture::knowledge_base();
    const auto paths = discover_paths(kb->schema(), kb->closure(), pe("Gene"), pe("TcruziSample"));
    REQUIRE_FALSE(paths.empty());
    for (std::size_t i = 1; i < paths.size(); ++i) CHECK(paths[i - 1].length() <= paths[i].length());
    bool chain = false;
    for (const auto& p : paths) {
      if (p.length() != 6) continue;
      std::vector<Iri> classes;
      for (const auto& s : p.steps) classes.push_back(s.to);
      chain = chain || classes == std::vector<Iri>{pe("SequenceExtraction"),
                                                   pe("KnockoutPlasmidConstruction"),
                                                   pe("Transfection"), pe("DrugSelection"),
                                                   pe("CellCloning"), pe("TcruziSample")};
    }
    CHECK(chain);
  }

  TEST_CASE("path limits and cancellation") {
    const auto kb = fixture::knowledge_base();
    CHECK_THROWS_AS(discover_paths(kb->schema(), kb->closure(), pe("Gene"), pe("Primer"), 0), Error);
    CHECK_THROWS_AS(discover_paths(kb->schema(), kb->closure(), pe("Gene"), pe("Primer"), 9), Error);
    CHECK_THROWS_AS(discover_paths(kb->schema(), kb->closure(), pe("Nope"), pe("Primer")), Error);
    std::stop_source stop;
    stop.request_stop();
    CHECK(discover_paths(kb->schema(), kb->closure(), pe("Gene"), pe("TcruziSample"), 8,
                         stop.get_token())
              .empty());
  }
}
