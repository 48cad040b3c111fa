#include <doctest.h>

#include "fixture.hpp"
#include "oracles.hpp"
#include "ontoquery/error.hpp"
#include "ontoquery/reasoner.hpp"

using namespace ontoquery;
using fixture::pe;

namespace {

std::set<Iri> labels_to_set(const std::vector<PropertyInfo>& props) {
  std::set<Iri> out;
  for (const auto& p : props) out.insert(p.iri);
  return out;
}

SchemaIndex chain_schema(const std::vector<std::pair<int, int>>& edges, int n) {
  std::map<Iri, ClassInfo> classes;
  for (int i = 0; i < n; ++i) {
    ClassInfo c;
    c.iri = Iri("http://x.example/C" + std::to_string(i));
    c.label = "c" + std::to_string(i);
    classes.emplace(c.iri, c);
  }
  std::set<std::pair<Iri, Iri>> es;
  for (auto [a, b] : edges)
    es.emplace(Iri("http://x.example/C" + std::to_string(a)), Iri("http://x.example/C" + std::to_string(b)));
  return SchemaIndex::from_parts(std::move(classes), {}, std::move(es));
}

}  // namespace

TEST_SUITE("reasoner") {
  TEST_CASE("closure matches the breadth-first oracle on random schemas") {
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i) {
      const SchemaIndex s = oracle::random_schema(rng, {3, 40, i % 2 == 1});
      const SubclassClosure c = SubclassClosure::compute(s);
      const oracle::Closure o = oracle::bfs_closure(s);
      CHECK(c.reachable() == o.ancestors);
      CHECK(c.cycles() == o.cycles);
      for (const auto& [cls, anc] : o.ancestors) CHECK(c.descendants(cls) == o.descendants(cls));
    }
  }

  TEST_CASE("cycles are grouped and reported") {
    const SchemaIndex s = chain_schema({{0, 1}, {1, 2}, {2, 0}, {3, 0}, {4, 5}, {5, 4}}, 6);
    Diagnostics diags;
    const SubclassClosure c = SubclassClosure::compute(s, &diags);
    REQUIRE(c.cycles().size() == 2);
    CHECK(c.cycles()[0].size() == 3);
    CHECK(c.cycles()[1].size() == 2);
    CHECK(is_subclass_of(c, Iri("http://x.example/C0"), Iri("http://x.example/C2")));
    CHECK(is_subclass_of(c, Iri("http://x.example/C3"), Iri("http://x.example/C1")));
    CHECK_FALSE(is_subclass_of(c, Iri("http://x.example/C1"), Iri("http://x.example/C3")));
    CHECK_FALSE(diags.empty());
  }

  TEST_CASE("subsumption on the fixture") {
    const auto kb = fixture::knowledge_base();
    const auto& c = kb->closure();
    CHECK(is_subclass_of(c, pe("ClonedSample"), pe("TcruziSample")));
    CHECK(is_subclass_of(c, pe("Gene"), pe("Gene")));
    CHECK_FALSE(is_subclass_of(c, pe("TcruziSample"), pe("ClonedSample")));
    CHECK(compatible(c, pe("TcruziSample"), pe("ClonedSample")));
    CHECK_FALSE(compatible(c, pe("Gene"), pe("Primer")));
    CHECK(c.cycles().empty());
    CHECK_THROWS_AS(is_subclass_of(c, pe("Nope"), pe("Gene")), Error);
  }

  TEST_CASE("applicable properties include restrictions and inherited domains") {
    const auto kb = fixture::knowledge_base();
    const auto out = labels_to_set(properties_of(kb->schema(), kb->closure(), pe("CellCloning")));
    CHECK(out == std::set<Iri>{pe("hasOutputValue"), pe("precededBy")});
    const auto gene = labels_to_set(properties_of(kb->schema(), kb->closure(), pe("Gene")));
    CHECK(gene == std::set<Iri>{pe("hasLog2Ratio"), pe("hasOligonucleotide"), pe("hasPrimer"),
                                pe("isHomologousTo")});
    const auto cloned = labels_to_set(properties_of(kb->schema(), kb->closure(), pe("ClonedSample")));
    CHECK(cloned == std::set<Iri>{pe("hasStrainStatus")});
  }

  TEST_CASE("incoming properties include ranges and restriction fillers") {
    const auto kb = fixture::knowledge_base();
    const auto oligo =
        labels_to_set(incoming_properties_of(kb->schema(), kb->closure(), pe("MicroarrayOligonucleotide")));
    CHECK(oligo == std::set<Iri>{pe("hasOligonucleotide")});
    const auto sample =
        labels_to_set(incoming_properties_of(kb->schema(), kb->closure(), pe("ClonedSample")));
    CHECK(sample == std::set<Iri>{pe("hasOutputValue")});
  }

  TEST_CASE("step targets") {
    const auto kb = fixture::knowledge_base();
    CHECK(forward_targets(kb->schema(), kb->closure(), pe("CellCloning"), pe("hasOutputValue")) ==
          std::set<Iri>{pe("TcruziSample")});
    CHECK(forward_targets(kb->schema(), kb->closure(), pe("Gene"), pe("hasPrimer")) ==
          std::set<Iri>{pe("Primer")});
    CHECK(inverse_targets(kb->schema(), pe("hasOligonucleotide")) == std::set<Iri>{pe("Gene")});
    CHECK(inverse_targets(kb->schema(), pe("hasParameter")) == std::set<Iri>{pe("SequenceExtraction")});
  }

  TEST_CASE("extended instances record subclass witnesses") {
    const auto kb = fixture::knowledge_base();
    const auto ext = instances_of_extended(kb->closure(), pe("TcruziSample"), kb->select("all"));
    CHECK(ext.direct.empty());
    REQUIRE(ext.via_subclass.size() == 3);
    CHECK(ext.via_subclass.at(Term(fixture::data("CloneID10"))) == pe("ClonedSample"));
    CHECK(ext.via_subclass.at(Term(fixture::data("Sample7"))) == pe("DrugSelectedSample"));
    const auto genes = instances_of_extended(kb->closure(), pe("Gene"), kb->select("transcriptome"));
    CHECK(genes.direct.size() == 4);
    CHECK(asserted_types(Term(fixture::data("geneA")), kb->select("all")) == std::set<Iri>{pe("Gene")});
  }
}
