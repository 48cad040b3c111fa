#include "fixture.hpp"

#include <fstream>
#include <sstream>

#include "ontoquery/error.hpp"

namespace fixture {

std::string path(const std::string& file) { return std::string(ONTOQUERY_FIXTURE_DIR) + "/" + file; }

std::string read(const std::string& file) {
  std::ifstream in(path(file), std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "missing fixture " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::shared_ptr<Deployment> deployment() {
  return Deployment::load(load_config(path("deployment.conf")));
}

KnowledgeBasePtr knowledge_base() {
  static const KnowledgeBasePtr kb = deployment()->knowledge_base();
  return kb;
}

PathQuery fig2_query(const KnowledgeBase& kb) {
  PathQuery q = new_query(kb, pe("CellCloning"));
  q = add_step(kb, q, 0, pe("hasOutputValue"), Direction::Forward, pe("TcruziSample"));
  q = add_step(kb, q, 0, pe("precededBy"), Direction::Forward, pe("DrugSelection"));
  q = add_step(kb, q, 2, pe("precededBy"), Direction::Forward, pe("Transfection"));
  q = add_step(kb, q, 3, pe("precededBy"), Direction::Forward, pe("KnockoutPlasmidConstruction"));
  q = add_step(kb, q, 4, pe("precededBy"), Direction::Forward, pe("SequenceExtraction"));
  q = add_step(kb, q, 5, pe("hasParameter"), Direction::Forward, pe("Gene"));
  return q;
}

PathQuery fig4_query(const KnowledgeBase& kb) {
  PathQuery q = new_query(kb, pe("Gene"));
  q = add_step(kb, q, 0, pe("hasLog2Ratio"), Direction::Forward, Datatype::Decimal);
  q = add_literal_filter(kb, q, 1, Comparator::Greater, Literal::decimal("1"));
  q = add_step(kb, q, 0, pe("hasPrimer"), Direction::Forward, pe("Primer"));
  q = add_step(kb, q, 2, pe("has3PrimeRegion"), Direction::Forward, pe("ThreePrimeRegion"));
  return q;
}

PathQuery fig1_query(const KnowledgeBase& kb) {
  PathQuery q = new_query(kb, pe("MicroarrayOligonucleotide"));
  q = add_step(kb, q, 0, pe("hasOligonucleotide"), Direction::Inverse, pe("Gene"));
  q = add_step(kb, q, 1, pe("isHomologousTo"), Direction::Forward, pe("Gene"));
  q = add_step(kb, q, 2, pe("hasPrimer"), Direction::Forward, pe("Primer"));
  q = add_step(kb, q, 3, pe("has3PrimeRegion"), Direction::Forward, pe("ThreePrimeRegion"));
  return q;
}

}  // namespace fixture
