// Python bindings: a loaded deployment with direct engine calls and the
// JSON request router.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ontoquery/api.hpp"
#include "ontoquery/error.hpp"

namespace py = pybind11;
using namespace ontoquery;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_python(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

class PyDeployment {
 public:
  explicit PyDeployment(const std::filesystem::path& config)
      : deployment_(Deployment::load(load_config(config))), api_(deployment_) {}

  py::object datasets() const {
    Json out = Json::array();
    for (const auto& d : deployment_->list_datasets()) out.push_back(to_json(d));
    return to_python(out);
  }

  py::object suggest(const std::string& prefix, std::size_t limit) const {
    const KnowledgeBase& kb = *deployment_->knowledge_base();
    Json out = Json::array();
    for (const auto& s : suggest_concepts(kb.schema(), kb.closure(), prefix,
                                          limit ? limit : deployment_->config().suggestion_limit))
      out.push_back(to_json(s));
    return to_python(out);
  }

  py::object query(const std::string& text, const std::string& dataset) const {
    const KnowledgeBase& kb = *deployment_->knowledge_base();
    PathQuery q = parse_query_text(text, kb.schema(), kb.closure());
    if (!dataset.empty()) q = with_dataset(q, dataset);
    const ResultTable table = execute(compile(q, kb.schema(), kb.closure()), kb);
    const PartitionedResults parts = partition_results(table, q, kb.closure(), kb.select(q.dataset));
    Json columns = Json::array();
    for (const auto& c : table.columns) columns.push_back(c.label);
    return to_python({{"dataset", q.dataset},
                      {"columns", std::move(columns)},
                      {"rows", table_json(table, kb)},
                      {"specific", table_json(parts.specific, kb)},
                      {"general", table_json(parts.general, kb)}});
  }

  std::string sparql(const std::string& text) const {
    const KnowledgeBase& kb = *deployment_->knowledge_base();
    return emit_sparql(parse_query_text(text, kb.schema(), kb.closure()), kb.schema()).text;
  }

  py::tuple request(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& params, const py::object& body) {
    ApiRequest r{method, path, params, body.is_none() ? std::string() : from_python(body).dump()};
    ApiResponse res;
    {
      py::gil_scoped_release release;
      res = api_.handle(r);
    }
    return py::make_tuple(res.status, to_python(res.body));
  }

 private:
  std::shared_ptr<Deployment> deployment_;
  ApiService api_;
};

}  // namespace

PYBIND11_MODULE(ontoquery, m) {
  m.doc() = "Ontology-guided path queries over RDF datasets";

  static py::exception<Error> error(m, "OntoqueryError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(e.what()));
      exc.attr("code") = std::string(code_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<PyDeployment>(m, "Deployment")
      .def(py::init<const std::filesystem::path&>(), py::arg("config"))
      .def("datasets", &PyDeployment::datasets)
      .def("suggest", &PyDeployment::suggest, py::arg("prefix"), py::arg("limit") = 0)
      .def("query", &PyDeployment::query, py::arg("text"), py::arg("dataset") = "")
      .def("sparql", &PyDeployment::sparql, py::arg("text"))
      .def("request", &PyDeployment::request, py::arg("method"), py::arg("path"),
           py::arg("params") = std::map<std::string, std::string>{}, py::arg("body") = py::none());
}
