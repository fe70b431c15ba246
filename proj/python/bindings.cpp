#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "indexcode/generate.hpp"
#include "indexcode/report.hpp"

namespace py = pybind11;
using namespace indexcode;

namespace {

DecoderSet to_set(const std::vector<int>& ds) {
    DecoderSet out;
    for (int d : ds) out.insert(d);
    return out;
}

// Exact value as a (numerator, denominator) pair of decimal strings; the Python
// wrapper turns it into fractions.Fraction.
py::tuple rational_parts(const Rational& r) {
    return py::make_tuple(numerator(r).str(), denominator(r).str());
}

py::dict classification_dict(const Classification& c) {
    py::dict d;
    d["dag"] = c.is_dag;
    d["directed_cycle"] = c.is_directed_cycle;
    d["gm2_form"] = c.is_gm2_form;
    d["unicast"] = c.is_unicast;
    return d;
}

py::dict report_dict(const Instance& inst, const RateReport& r) {
    py::dict d;
    d["decoders"] = r.decoders;
    d["bits"] = r.bits;
    d["classification"] = classification_dict(r.classification);
    d["lower"] = r.lower.value;
    d["lower_order"] = r.lower.permutation;
    d["capm"] = r.capm.rate;
    d["scapm"] = rational_parts(r.scapm.rate);
    d["t"] = r.scapm.t;
    d["exact"] = r.oracle ? py::object(py::int_(r.oracle->rate)) : py::object(py::none());
    d["certified"] = r.certified_optimal;
    d["certificate"] = certificate_name(r.certificate);
    d["optimal"] = r.optimal_rate ? py::object(rational_parts(*r.optimal_rate)) : py::object(py::none());
    d["notes"] = r.notes;
    d["text"] = render_report(inst, r);
    return d;
}

}  // namespace

PYBIND11_MODULE(_indexcode, m) {
    py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_OverflowError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    py::class_<Instance>(m, "Instance")
        .def(py::init([](int decoders, const std::vector<std::tuple<std::string, std::vector<int>, std::vector<int>>>& bits) {
                 std::vector<BitSpec> specs;
                 for (const auto& [label, need, has] : bits) specs.push_back({label, to_set(need), to_set(has)});
                 return Instance(decoders, std::move(specs));
             }),
             py::arg("decoders"), py::arg("bits"))
        .def_static("parse", [](const std::string& text) { return parse_instance(text); })
        .def_property_readonly("decoders", &Instance::decoders)
        .def("__len__", &Instance::size)
        .def_property_readonly("bits", [](const Instance& inst) {
            py::list out;
            for (const BitSpec& b : inst.bits()) out.append(py::make_tuple(b.label, b.need.members(), b.has.members()));
            return out;
        })
        .def("render", &render_instance)
        .def("__eq__", &Instance::operator==)
        .def("__repr__", [](const Instance& inst) {
            return "<Instance m=" + std::to_string(inst.decoders()) + " s=" + std::to_string(inst.size()) + ">";
        });

    m.def("normalize", [](const Instance& inst, bool merge) {
        Normalized n = normalize(inst, {merge});
        return py::make_tuple(n.instance, n.warnings);
    }, py::arg("instance"), py::arg("merge_decoders") = true);
    m.def("classify", [](const Instance& inst) { return classification_dict(classify(inst)); });

    m.def("lower_bound", [](const Instance& inst) {
        const ChainWitness w = dsm_plus_dp(inst);
        return py::make_tuple(w.value, w.permutation, w.terms);
    });
    m.def("capm", [](const Instance& inst) {
        const CapmResult r = run_capm(inst);
        return py::make_tuple(r.rate, render_table(inst, r.table), render_trace(inst, r.trace));
    });
    m.def("scapm_parts", [](const Instance& inst) {
        const ScapmResult r = run_scapm(inst);
        return py::make_tuple(rational_parts(r.rate), r.t, render_table(r.plan.instance, r.plan.table));
    });
    m.def("exact", [](const Instance& inst, std::size_t max_bits) {
        const OracleResult r = exact_scalar_linear(inst, max_bits);
        return py::make_tuple(r.rate, r.witness.row_strings());
    }, py::arg("instance"), py::arg("max_bits") = kDefaultOracleBits);
    m.def("check", [](const Instance& inst, bool run_oracle, std::size_t max_bits) {
        return report_dict(inst, check_instance(inst, {run_oracle, max_bits}));
    }, py::arg("instance"), py::arg("run_oracle") = true, py::arg("max_oracle_bits") = kDefaultOracleBits);

    m.def("directed_cycle", &directed_cycle);
    m.def("undirected_cycle", &undirected_cycle);
    m.def("random_dag", &random_dag, py::arg("m"), py::arg("s"), py::arg("seed"));
    m.def("random_gm2", &random_gm2, py::arg("m"), py::arg("s"), py::arg("seed"));
    m.def("random_instance", &random_instance, py::arg("m"), py::arg("s"), py::arg("seed"));
    m.def("fixture_names", [] {
        std::vector<std::string> names;
        for (const auto& f : reference_fixtures()) names.push_back(f.name);
        return names;
    });
    m.def("fixture", [](const std::string& name) { return parse_instance(reference_fixture(name).text); });
}
