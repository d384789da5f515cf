#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rdm/core/perm_id.hpp"
#include "rdm/core/validation.hpp"
#include "rdm/extract/parsers.hpp"
#include "rdm/graph/provenance.hpp"
#include "rdm/previews/ipf.hpp"
#include "rdm/service/workbench.hpp"
#include "rdm/store/sha256.hpp"
#include "rdm/workflows/report.hpp"
#include "rdm/workflows/stress_strain.hpp"

namespace py = pybind11;
using namespace rdm;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::handle& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

ByteView view(const py::bytes& b) {
  const std::string_view s(b);
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

py::bytes to_py_bytes(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

nlohmann::json parse_result_json(const ParseResult& r) {
  return {{"vendor", to_string(r.vendor)},
          {"raw", to_json(r.raw)},
          {"unified", to_json(r.unified)},
          {"warnings", r.warnings}};
}

}  // namespace

PYBIND11_MODULE(_rdmbench, m) {
  m.doc() = "Research data workbench: repository, metadata extraction, provenance and workflows";

  static py::exception<Error> rdm_error(m, "RdmError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(rdm_error.ptr())(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      if (const auto* v = dynamic_cast<const ValidationError*>(&e))
        inst.attr("violations") = to_py(to_json(v->report())["violations"]);
      PyErr_SetObject(rdm_error.ptr(), inst.ptr());
    }
  });

  m.def("sha256_hex", [](const py::bytes& data) { return sha256_hex(view(data)); });
  m.def("is_valid_perm_id", [](const std::string& s) { return PermId::is_valid(s); });
  m.def("qr_payload", [](const std::string& id) { return qr_payload(PermId(id)); });
  m.def("detect_format", [](const py::bytes& data) { return std::string(to_string(detect_format(view(data)))); });
  m.def("extract_metadata", [](const py::bytes& data) { return to_py(parse_result_json(extract_metadata(view(data)))); },
        "Detects the vendor and returns raw, unified and warnings.");
  m.def("validate", [](const py::dict& record) {
    return to_py(to_json(validate_object(object_from_request(from_py(record)), builtin_schemas(),
                                         seed_vocabularies())));
  });
  m.def("stress_strain", [](const std::string& load_csv, double diameter_top, double height) {
    return to_py(to_json(stress_strain(parse_load_csv(load_csv), {"P", diameter_top, height})));
  }, py::arg("load_csv"), py::arg("diameter_top"), py::arg("height"));
  m.def("ipf_color", [](double phi1, double Phi, double phi2) {
    const auto c = euler_to_ipf_color({phi1, Phi, phi2});
    return py::make_tuple(c[0], c[1], c[2]);
  });

  py::class_<Workbench>(m, "Workbench")
      .def(py::init([](std::optional<std::filesystem::path> journal, std::filesystem::path blob_root) {
             return std::make_unique<Workbench>(
                 WorkbenchConfig{journal.value_or(std::filesystem::path()), std::move(blob_root)});
           }),
           py::arg("journal") = py::none(), py::arg("blob_root"))
      .def("create_object", [](Workbench& wb, const py::dict& body) {
        return wb.create_object(object_from_request(from_py(body))).str();
      })
      .def("get_object", [](Workbench& wb, const std::string& id) {
        return to_py(to_json(*wb.repo().get_object(PermId(id))));
      })
      .def("link", [](Workbench& wb, const std::string& parent, const std::string& child) {
        wb.link(PermId(parent), PermId(child));
      })
      .def("ingest",
           [](Workbench& wb, const std::string& entry, const py::bytes& data, const std::string& dataset_type,
              const std::string& format, const std::string& filename) {
             const auto bytes = view(data);
             return to_py(to_json(*wb.ingest(PermId(entry), bytes, dataset_type, parser_choice(format, bytes),
                                              filename)));
           },
           py::arg("entry"), py::arg("data"), py::arg("dataset_type"), py::arg("format") = "auto",
           py::arg("filename") = "upload")
      .def("preview", [](Workbench& wb, const std::string& dataset) -> py::object {
        const auto png = wb.preview(PermId(dataset));
        if (!png) return py::none();
        return to_py_bytes(*png);
      })
      .def("graph",
           [](Workbench& wb, const std::string& root, const std::string& direction,
              std::optional<std::size_t> depth) {
             return to_py(to_json(build_graph(wb.repo(), PermId(root), direction_from_string(direction), depth)));
           },
           py::arg("root"), py::arg("direction") = "both", py::arg("depth") = py::none())
      .def("graph_dot",
           [](Workbench& wb, const std::string& root, const std::string& direction) {
             return export_dot(build_graph(wb.repo(), PermId(root), direction_from_string(direction)));
           },
           py::arg("root"), py::arg("direction") = "both")
      .def("filter_by_element", [](Workbench& wb, const std::string& element) {
        return to_py(to_json(filter_by_element(wb.repo(), element)));
      })
      .def("tick", [](Workbench& wb) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& o : wb.scheduler().tick()) out.push_back(to_json(o));
        return to_py(out);
      })
      .def("prep_report", [](Workbench& wb, const std::string& entry) {
        return to_py(to_json(prep_report(wb.repo(), PermId(entry))));
      });
}
