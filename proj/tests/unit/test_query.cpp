#include <doctest.h>

#include "fixture.hpp"
#include "oracles.hpp"
#include "ontoquery/error.hpp"
#include "ontoquery/query.hpp"

using namespace ontoquery;
using fixture::data;
using fixture::pe;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

}  // namespace

TEST_SUITE("query") {
  TEST_CASE("building the knockout lineage query") {
    const auto kb = fixture::knowledge_base();
    const PathQuery q = fixture::fig2_query(*kb);
    CHECK(q.nodes.size() == 7);
    CHECK(q.edges.size() == 6);
    CHECK(q.root().class_iri() == pe("CellCloning"));
    CHECK(q.child_edges(0).size() == 2);
    REQUIRE(q.parent_edge(6) != nullptr);
    CHECK(q.parent_edge(6)->property == pe("hasParameter"));
    CHECK(q.parent_edge(0) == nullptr);
    CHECK(q.dataset == "all");
    CHECK_NOTHROW(validate(kb->schema(), kb->closure(), q));
  }

  TEST_CASE("step validation") {
    const auto kb = fixture::knowledge_base();
    const PathQuery q = new_query(*kb, pe("Gene"));
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("precededBy"), Direction::Forward, pe("Process")); }) ==
          ErrorCode::InapplicableProperty);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("hasPrimer"), Direction::Forward, pe("Drug")); }) ==
          ErrorCode::IncompatibleTarget);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::String); }) ==
          ErrorCode::IncompatibleTarget);
    CHECK(code_of([&] { add_step(*kb, q, 3, pe("hasPrimer"), Direction::Forward, pe("Primer")); }) ==
          ErrorCode::UnknownNode);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("nope"), Direction::Forward, pe("Primer")); }) ==
          ErrorCode::UnknownSymbol);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("hasPrimer"), Direction::Forward, pe("Nope")); }) ==
          ErrorCode::UnknownClass);
    CHECK(code_of([&] { new_query(*kb, Datatype::Decimal); }) == ErrorCode::TypeMismatch);

    const PathQuery withdt = add_step(*kb, q, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal);
    CHECK(code_of([&] { add_step(*kb, withdt, 1, pe("hasPrimer"), Direction::Forward, pe("Primer")); }) ==
          ErrorCode::InapplicableProperty);
    // A subclass target is admitted, and so is a superclass.
    const PathQuery cc = new_query(*kb, pe("CellCloning"));
    CHECK_NOTHROW(add_step(*kb, cc, 0, pe("hasOutputValue"), Direction::Forward, pe("ClonedSample")));
    CHECK_NOTHROW(add_step(*kb, cc, 0, pe("precededBy"), Direction::Forward, pe("Process")));
  }

  TEST_CASE("inverse steps") {
    const auto kb = fixture::knowledge_base();
    const PathQuery q = new_query(*kb, pe("MicroarrayOligonucleotide"));
    const PathQuery q2 = add_step(*kb, q, 0, pe("hasOligonucleotide"), Direction::Inverse, pe("Gene"));
    CHECK(q2.edges[0].direction == Direction::Inverse);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("hasOligonucleotide"), Direction::Inverse, pe("Primer")); }) ==
          ErrorCode::IncompatibleTarget);
    CHECK(code_of([&] { add_step(*kb, q, 0, pe("hasPrimer"), Direction::Inverse, pe("Gene")); }) ==
          ErrorCode::InapplicableProperty);
  }

  TEST_CASE("instance selections") {
    const auto kb = fixture::knowledge_base();
    const PathQuery q = new_query(*kb, pe("TcruziSample"));
    const PathQuery sel = set_instance_selection(*kb, q, 0, SelectionOp::AnyOf, {data("CloneID10")});
    CHECK(sel.root().selection->instances.size() == 1);
    try {
      set_instance_selection(*kb, q, 0, SelectionOp::NoneOf, {data("geneA"), data("CloneID12")});
      FAIL("expected a type mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TypeMismatch);
      CHECK(std::string(e.what()).find("geneA") != std::string::npos);
      CHECK(std::string(e.what()).find("CloneID12") == std::string::npos);
    }
    CHECK(code_of([&] { set_instance_selection(*kb, q, 0, SelectionOp::AnyOf, {}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(parse_selection_op("none-of") == SelectionOp::NoneOf);
  }

  TEST_CASE("literal filters") {
    const auto kb = fixture::knowledge_base();
    PathQuery q = new_query(*kb, pe("Gene"));
    q = add_step(*kb, q, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal);
    CHECK_NOTHROW(add_literal_filter(*kb, q, 1, Comparator::GreaterEqual, Literal::integer(1)));
    CHECK(code_of([&] { add_literal_filter(*kb, q, 1, Comparator::Less, Literal::string("a")); }) ==
          ErrorCode::DatatypeMismatch);
    CHECK(code_of([&] { add_literal_filter(*kb, q, 0, Comparator::Equal, Literal::decimal("1")); }) ==
          ErrorCode::DatatypeMismatch);
    const PathQuery twice = add_literal_filter(
        *kb, add_literal_filter(*kb, q, 1, Comparator::Less, Literal::decimal("2")), 1,
        Comparator::Greater, Literal::decimal("1"));
    CHECK(twice.nodes[1].filter->comparator == Comparator::Greater);

    PathQuery s = new_query(*kb, pe("TcruziSample"));
    s = add_step(*kb, s, 0, pe("hasStrainStatus"), Direction::Forward, Datatype::String);
    CHECK(code_of([&] { add_literal_filter(*kb, s, 1, Comparator::Less, Literal::string("b")); }) ==
          ErrorCode::DatatypeMismatch);
    CHECK_NOTHROW(add_literal_filter(*kb, s, 1, Comparator::NotEqual, Literal::string("b")));
  }

  TEST_CASE("comparators") {
    const Filter gt{Comparator::Greater, Literal::decimal("1")};
    CHECK(gt.accepts(Literal::decimal("1.5")));
    CHECK_FALSE(gt.accepts(Literal::decimal("1.0")));
    CHECK(gt.accepts(Literal::integer(2)));
    CHECK(Filter{Comparator::Equal, Literal::decimal("1")}.accepts(Literal::decimal("1.00")));
    CHECK(Filter{Comparator::NotEqual, Literal::string("a")}.accepts(Literal::string("b")));
    CHECK_FALSE(Filter{Comparator::Less, Literal::string("a")}.accepts(Literal::string("0")));
    for (const char* sym : {"<", "<=", "=", ">=", ">", "!="})
      CHECK(comparator_symbol(*parse_comparator(sym)) == sym);
    CHECK(parse_comparator("≥") == Comparator::GreaterEqual);
    CHECK(parse_comparator("≠") == Comparator::NotEqual);
    CHECK_FALSE(parse_comparator("~").has_value());

    std::mt19937 rng(5);
    const std::vector<std::string> values{"-2", "0", "0.5", "1", "1.0", "2.25", "10"};
    for (int i = 0; i < 300; ++i) {
      const Literal a = Literal::decimal(values[rng() % values.size()]);
      const Literal b = Literal::decimal(values[rng() % values.size()]);
      const auto c = static_cast<Comparator>(rng() % 6);
      CHECK(Filter{c, b}.accepts(a) == oracle::compare_literal(a, c, b));
    }
  }

  TEST_CASE("removal") {
    const auto kb = fixture::knowledge_base();
    const PathQuery q = fixture::fig4_query(*kb);
    CHECK(code_of([&] { remove_node(q, 0); }) == ErrorCode::NonLeafRemoval);
    CHECK(code_of([&] { remove_node(q, 2); }) == ErrorCode::NonLeafRemoval);
    CHECK(code_of([&] { remove_node(q, 9); }) == ErrorCode::UnknownNode);
    const PathQuery r = remove_node(q, 3);
    CHECK(r.nodes.size() == 3);
    CHECK(r.edges.size() == 2);
    // Ids are never reused.
    const PathQuery again = add_step(*kb, r, 2, pe("has3PrimeRegion"), Direction::Forward,
                                     pe("ThreePrimeRegion"));
    CHECK(again.nodes.back().id == 3);
    const PathQuery r2 = remove_node(r, 1);
    CHECK(add_step(*kb, r2, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal)
              .nodes.back()
              .id == 3);
  }

  TEST_CASE("canonical form ignores sibling insertion order") {
    const auto kb = fixture::knowledge_base();
    PathQuery a = new_query(*kb, pe("Gene"));
    a = add_step(*kb, a, 0, pe("hasPrimer"), Direction::Forward, pe("Primer"));
    a = add_step(*kb, a, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal);
    PathQuery b = new_query(*kb, pe("Gene"));
    b = add_step(*kb, b, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal);
    b = add_step(*kb, b, 0, pe("hasPrimer"), Direction::Forward, pe("Primer"));
    CHECK(canonicalize(a) == canonicalize(b));
    CHECK(canonicalize(a) != canonicalize(with_dataset(a, "strains")));
  }

  TEST_CASE("canonical form round-trips") {
    const auto kb = fixture::knowledge_base();
    for (const PathQuery& q : {fixture::fig1_query(*kb), fixture::fig2_query(*kb), fixture::fig4_query(*kb)}) {
      const std::string text = canonicalize(q);
      CHECK(canonicalize(parse_canonical(text, kb->schema(), kb->closure())) == text);
    }
    std::mt19937 rng(3);
    for (int i = 0; i < 40; ++i) {
      const SchemaIndex s = oracle::random_schema(rng, {3, 15, false});
      const KnowledgeBase rkb(s, oracle::random_datasets(rng, s, 80));
      const PathQuery q = oracle::random_query(rng, rkb);
      const std::string text = canonicalize(q);
      CHECK(canonicalize(parse_canonical(text, rkb.schema(), rkb.closure())) == text);
    }
    CHECK_THROWS_AS(parse_canonical("garbage(", kb->schema(), kb->closure()), ParseError);
  }

  TEST_CASE("history and undo") {
    const auto kb = fixture::knowledge_base();
    Formulation f(kb, pe("Gene"));
    const PathQuery s0 = f.current();
    CHECK(code_of([&] { f.undo(); }) == ErrorCode::NothingToUndo);
    f.add_step(0, pe("hasPrimer"), Direction::Forward, pe("Primer"));
    const PathQuery s1 = f.current();
    CHECK_THROWS(f.add_step(0, pe("precededBy"), Direction::Forward, pe("Process")));
    CHECK(f.history().depth() == 2);
    f.add_step(1, pe("has3PrimeRegion"), Direction::Forward, pe("ThreePrimeRegion"));
    f.remove_node(2);
    CHECK(f.current() == s1);
    f.undo();
    CHECK(f.current().nodes.size() == 3);
    f.undo();
    CHECK(f.current() == s1);
    f.undo();
    CHECK(f.current() == s0);
  }

  TEST_CASE("random operation sequences undo to earlier snapshots") {
    std::mt19937 rng(17);
    for (int run = 0; run < 20; ++run) {
      const SchemaIndex s = oracle::random_schema(rng, {4, 20, false});
      auto rkb = std::make_shared<const KnowledgeBase>(s, oracle::random_datasets(rng, s, 100));
      Formulation f(rkb, s.classes().begin()->first);
      std::vector<PathQuery> snapshots{f.current()};
      for (int op = 0; op < 30; ++op) {
        const PathQuery target = oracle::random_query(rng, *rkb, 2);
        try {
          if (rng() % 3 == 0 && f.current().nodes.size() > 1) {
            f.remove_node(f.current().nodes.back().id);
          } else {
            const QueryNode& from = f.current().nodes[rng() % f.current().nodes.size()];
            if (!from.is_class() || target.edges.empty()) continue;
            const QueryEdge& e = target.edges.front();
            f.add_step(from.id, e.property, e.direction, target.nodes[1].type);
          }
          snapshots.push_back(f.current());
        } catch (const Error&) {
        }
      }
      REQUIRE(f.history().depth() == snapshots.size());
      const std::size_t k = rng() % snapshots.size();
      for (std::size_t i = 0; i < k; ++i) f.undo();
      CHECK(f.current() == snapshots[snapshots.size() - 1 - k]);
    }
  }
}
