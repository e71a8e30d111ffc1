#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hdisp/io.hpp"

namespace py = pybind11;
using namespace hdisp;

namespace {

json checks(const AxiomReport& a) {
  json out = json::array();
  for (const auto& x : a.results) out.push_back({{"check", x.name}, {"ok", x.ok}, {"detail", x.witness}});
  return out;
}

std::string ring_info(const std::string& spec) {
  const Ring r = ring_from_json(json::parse(spec));
  return json{{"size", r->size()}, {"dim", r->dim()}, {"nilpotency", r->nilpotency()}}.dump();
}

std::string witt_op(const std::string& op, const std::string& ring, std::size_t m, const std::string& x,
                    const std::string& y) {
  const Ring r = ring_from_json(json::parse(ring));
  const WittVec a = witt_from_json(r, m, json::parse(x), "x");
  if (op == "frob") return witt_to_json(witt_frobenius_fixed(a)).dump();
  if (op == "v") return witt_to_json(truncate(verschiebung(a), m)).dump();
  const WittVec b = witt_from_json(r, m, json::parse(y), "y");
  if (op == "add") return witt_to_json(witt_add(a, b)).dump();
  if (op == "mul") return witt_to_json(witt_mul(a, b)).dump();
  fail(ErrorKind::Schema, "unknown Witt operation " + op);
}

std::string frame_check(const std::string& spec, std::uint64_t budget, std::uint64_t seed) {
  const FramePtr f = frame_from_json(json::parse(spec));
  const auto a = frame_axiom_check(*f, budget, seed);
  return json{{"ok", a.ok()}, {"exhaustive", a.exhaustive}, {"checks", checks(a)}}.dump();
}

std::string classify(const std::string& spec, const std::vector<int>& mu, const std::string& group,
                     std::uint64_t budget) {
  const FramePtr f = frame_from_json(json::parse(spec));
  const OrbitReport o = group == "O" ? classify_orth_orbits(f, mu, budget) : classify_orbits(f, mu, group, budget);
  return json{{"total", o.total}, {"group_order", o.group_order}, {"sizes", o.sizes}}.dump();
}

bool zip_roundtrip(const std::string& spec) {
  const Display d = display_from_json(json::parse(spec));
  return from_fzip(to_fzip(d), d.frame) == d;
}

bool is_orthogonal(const std::string& spec) { return verify_orth(display_from_json(json::parse(spec)).phi).ok; }

std::string k3_deformations(const std::string& display, const std::string& ext, std::size_t m) {
  const K3Deformation k = k3_deform(display_from_json(json::parse(display)), ext_from_json(json::parse(ext)), m);
  json out = json::array();
  for (const auto& d : k.displays) out.push_back(display_to_json(d));
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> exc(m, "HdispError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    } catch (const json::exception& e) {
      py::set_error(exc, (std::string("schema: ") + e.what()).c_str());
    }
  });
  m.def("ring_info", &ring_info);
  m.def("witt_op", &witt_op, py::arg("op"), py::arg("ring"), py::arg("m"), py::arg("x"), py::arg("y") = "null");
  m.def("frame_check", &frame_check, py::arg("spec"), py::arg("budget") = kDefaultAxiomBudget, py::arg("seed") = 1);
  m.def("classify", &classify, py::arg("spec"), py::arg("mu"), py::arg("group") = "GL",
        py::arg("budget") = kDefaultOrbitBudget);
  m.def("zip_roundtrip", &zip_roundtrip);
  m.def("is_orthogonal", &is_orthogonal);
  m.def("k3_deformations", &k3_deformations, py::arg("display"), py::arg("ext"), py::arg("m") = 2);
}
