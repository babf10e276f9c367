// Python bindings for the core library: the two VSA algebras, the
// object dictionary / scene codec, PMF perception, the synthetic test
// generator with JSONL serialization, and the two solving engines.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nvsa/backend.hpp"
#include "nvsa/bipolar.hpp"
#include "nvsa/codec.hpp"
#include "nvsa/fhrr.hpp"
#include "nvsa/oracle.hpp"
#include "nvsa/pmf.hpp"
#include "nvsa/rpm.hpp"

namespace py = pybind11;
using namespace nvsa;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vector-symbolic Raven's-matrix solver core";

  // --- bipolar VSA ---
  py::class_<BipolarVector>(m, "BipolarVector")
      .def(py::init<>())
      .def_readwrite("elems", &BipolarVector::elems)
      .def("dim", &BipolarVector::dim)
      .def(py::self == py::self);
  m.def("bipolar_random", &bipolar_random, py::arg("seed"),
        py::arg("d") = kBipolarDim);
  m.def("bipolar_bind",
        py::overload_cast<const BipolarVector&, const BipolarVector&>(&bipolar_bind));
  m.def("bipolar_bundle",
        py::overload_cast<const std::vector<BipolarVector>&>(&bipolar_bundle));
  m.def("bipolar_negate", &bipolar_negate);
  m.def("cosine_sim", &cosine_sim);

  // --- FHRR ---
  py::class_<PhasorVector>(m, "PhasorVector")
      .def(py::init<>())
      .def_readwrite("angles", &PhasorVector::angles)
      .def("dim", &PhasorVector::dim)
      .def(py::self == py::self);
  m.def("fhrr_identity", &fhrr_identity);
  m.def("fhrr_random", &fhrr_random, py::arg("seed"), py::arg("d") = kFhrrDim);
  m.def("fhrr_bind", &fhrr_bind);
  m.def("fhrr_unbind", &fhrr_unbind);
  m.def("fhrr_sim", &fhrr_sim);
  m.def("fhrr_bundle_weighted",
        py::overload_cast<const std::vector<double>&, const std::vector<PhasorVector>&>(
            &fhrr_bundle_weighted));
  m.def("fractional_power", &fractional_power);

  // --- domain model ---
  py::enum_<rpm::ConstellationKind>(m, "ConstellationKind")
      .value("Center", rpm::ConstellationKind::Center)
      .value("Grid2x2", rpm::ConstellationKind::Grid2x2)
      .value("Grid3x3", rpm::ConstellationKind::Grid3x3)
      .value("LeftRight", rpm::ConstellationKind::LeftRight)
      .value("UpDown", rpm::ConstellationKind::UpDown)
      .value("OutInCenter", rpm::ConstellationKind::OutInCenter)
      .value("OutInGrid", rpm::ConstellationKind::OutInGrid);
  py::enum_<rpm::AnswerMode>(m, "AnswerMode")
      .value("RavenBiased", rpm::AnswerMode::RavenBiased)
      .value("FairTree", rpm::AnswerMode::FairTree);

  py::class_<rpm::ObjectSpec>(m, "ObjectSpec")
      .def(py::init<>())
      .def(py::init([](int slot, int type, int size, int color) {
             return rpm::ObjectSpec{slot, type, size, color};
           }),
           py::arg("slot"), py::arg("type"), py::arg("size"), py::arg("color"))
      .def_readwrite("slot", &rpm::ObjectSpec::slot)
      .def_readwrite("type", &rpm::ObjectSpec::type)
      .def_readwrite("size", &rpm::ObjectSpec::size)
      .def_readwrite("color", &rpm::ObjectSpec::color);
  py::class_<rpm::Scene>(m, "Scene")
      .def(py::init<>())
      .def_readwrite("constellation", &rpm::Scene::constellation)
      .def_readwrite("objects", &rpm::Scene::objects);
  py::class_<rpm::RpmTest>(m, "RpmTest")
      .def(py::init<>())
      .def_readonly("constellation", &rpm::RpmTest::constellation)
      .def_readonly("seed", &rpm::RpmTest::seed)
      .def_readonly("context", &rpm::RpmTest::context)
      .def_readonly("candidates", &rpm::RpmTest::candidates)
      .def_readonly("answer_index", &rpm::RpmTest::answer_index);

  m.def("generate_test", &rpm::generate_test, py::arg("seed"), py::arg("kind"),
        py::arg("mode") = rpm::AnswerMode::RavenBiased);
  m.def("to_jsonl_line", &rpm::to_jsonl_line);
  m.def("from_jsonl_line", &rpm::from_jsonl_line);
  m.def("verify_rules",
        [](const rpm::RpmTest& test) { return rpm::verify_rules(test).ok; });
  m.def("constellation_name", &rpm::constellation_name);

  // --- perception PMFs ---
  py::class_<AttributePMF>(m, "AttributePMF")
      .def_readonly("p", &AttributePMF::p)
      .def_readonly("has_inconsistency", &AttributePMF::has_inconsistency)
      .def("sum", &AttributePMF::sum)
      .def("argmax", &AttributePMF::argmax)
      .def("inconsistency_mass", &AttributePMF::inconsistency_mass);
  py::class_<PanelPMFs>(m, "PanelPMFs")
      .def_readonly("pos", &PanelPMFs::pos)
      .def_readonly("num", &PanelPMFs::num)
      .def_readonly("type", &PanelPMFs::type)
      .def_readonly("size", &PanelPMFs::size)
      .def_readonly("color", &PanelPMFs::color);
  m.def("panel_pmfs", &panel_pmfs, py::arg("scene"), py::arg("component"),
        py::arg("b") = kLaplaceDiversity);
  m.def("jsd", &jsd);

  // --- scene codec ---
  py::class_<ObjectCode>(m, "ObjectCode")
      .def(py::init([](int type, int size, int color, int pos) {
             return ObjectCode{type, size, color, pos};
           }),
           py::arg("type"), py::arg("size"), py::arg("color"), py::arg("pos"))
      .def_readwrite("type", &ObjectCode::type)
      .def_readwrite("size", &ObjectCode::size)
      .def_readwrite("color", &ObjectCode::color)
      .def_readwrite("pos", &ObjectCode::pos)
      .def(py::self == py::self)
      .def("__repr__", [](const ObjectCode& c) {
        return "ObjectCode(type=" + std::to_string(c.type) +
               ", size=" + std::to_string(c.size) +
               ", color=" + std::to_string(c.color) +
               ", pos=" + std::to_string(c.pos) + ")";
      });
  py::class_<ObjectDictionary>(m, "ObjectDictionary")
      .def(py::init<std::uint64_t, std::size_t>(), py::arg("seed"),
           py::arg("d") = kBipolarDim)
      .def("dim", &ObjectDictionary::dim)
      .def("encode", &ObjectDictionary::encode)
      .def("encode_scene", &ObjectDictionary::encode_scene)
      .def("decode", &ObjectDictionary::decode, py::arg("query"),
           py::arg("tau") = kDefaultDecodeThreshold);
  m.def("scene_codes", &scene_codes);
  m.def("scene_from_codes", &scene_from_codes);

  // --- solving engines ---
  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("answer_index", &SolveResult::answer_index)
      .def_readonly("candidate_scores", &SolveResult::candidate_scores);
  py::class_<BackendConfig>(m, "BackendConfig")
      .def(py::init<>())
      .def_readwrite("d", &BackendConfig::d)
      .def_readwrite("seed", &BackendConfig::seed)
      .def_readwrite("similarity_floor", &BackendConfig::similarity_floor)
      .def_readwrite("softmax_temp", &BackendConfig::softmax_temp);
  py::class_<ReasoningBackend>(m, "ReasoningBackend")
      .def(py::init<BackendConfig>(), py::arg("config") = BackendConfig{})
      .def("solve", &ReasoningBackend::solve);
  py::class_<ExactOracle>(m, "ExactOracle")
      .def(py::init<>())
      .def("solve", &ExactOracle::solve);
}
