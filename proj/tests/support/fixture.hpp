#pragma once

#include <string>

#include "ontoquery/deployment.hpp"
#include "ontoquery/query.hpp"

namespace fixture {

using namespace ontoquery;

inline const std::string kPe = "http://example.org/parasite-experiment#";
inline const std::string kData = "http://example.org/tcruzi-data#";

inline Iri pe(const std::string& local) { return Iri(kPe + local); }
inline Iri data(const std::string& local) { return Iri(kData + local); }

std::string path(const std::string& file);
std::string read(const std::string& file);

/// The shipped deployment (schema plus the strains and transcriptome datasets).
std::shared_ptr<Deployment> deployment();
KnowledgeBasePtr knowledge_base();

/// Cell cloning with its output sample and the preceded-by chain down to
/// the gene parameter: seven nodes, six edges.
PathQuery fig2_query(const KnowledgeBase& kb);

/// Gene with a log2 ratio above 1 and a primer with a 3 prime region.
PathQuery fig4_query(const KnowledgeBase& kb);

/// Oligonucleotide <- gene -> homologous gene -> primer -> 3 prime region.
PathQuery fig1_query(const KnowledgeBase& kb);

}  // namespace fixture
