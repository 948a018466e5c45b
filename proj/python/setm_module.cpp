// Python bindings: sets, codes, machine runs, REC terms and the equivalence sweep.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "setm/compiler.hpp"
#include "setm/machine.hpp"
#include "setm/rec.hpp"
#include "setm/stdlib.hpp"
#include "setm/tapecode.hpp"

namespace py = pybind11;
using namespace setm;

namespace {

HFSet to_set(const py::handle& h) {
    if (py::isinstance<HFSet>(h)) return h.cast<HFSet>();
    if (py::isinstance<py::int_>(h)) return hf_from_numeral(h.cast<std::uint64_t>());
    return HFSet::parse(h.cast<std::string>());
}

std::vector<HFSet> to_sets(const py::sequence& xs) {
    std::vector<HFSet> out;
    for (const auto& x : xs) out.push_back(to_set(x));
    return out;
}

MachineTable to_machine(const py::handle& h) {
    if (py::isinstance<MachineTable>(h)) return h.cast<MachineTable>();
    const auto s = h.cast<std::string>();
    const auto names = stdlib_names();
    if (std::find(names.begin(), names.end(), s) != names.end()) return stdlib_machine(s);
    return parse_table(s);
}

// Sets become one encoded component each; a string is code text.
Marking to_marking(const py::object& input, std::uint64_t seed) {
    if (py::isinstance<py::str>(input)) return parse_code_text(input.cast<std::string>());
    return encode_args(to_sets(input), seed);
}

py::dict outcome(const RunOutcome& r, const MachineTable& m) {
    py::dict d;
    if (auto* h = std::get_if<Halted>(&r)) {
        d["status"] = "halted";
        d["steps"] = h->steps;
        d["code"] = code_text(h->final);
        d["output"] = is_well_formed(h->final) ? py::cast(decode_marking(h->final)) : py::none();
    } else {
        d["status"] = std::holds_alternative<Crashed>(r) ? "crashed" : "fuel-exhausted";
        d["detail"] = describe(r, m);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Set Turing machines over hereditarily finite sets";

    py::register_exception<RecParseError>(m, "RecParseError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError");
    py::register_exception<InvarianceError>(m, "InvarianceError");
    py::register_exception<RunFailure>(m, "RunFailure");
    py::register_exception<TableError>(m, "TableError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<HFSet>(m, "HFSet")
        .def(py::init<>())
        .def(py::init([](const py::object& x) { return to_set(x); }))
        .def_property_readonly("elements", &HFSet::elements)
        .def_property_readonly("rank", &HFSet::rank)
        .def("__contains__", [](const HFSet& s, const py::object& y) { return s.contains(to_set(y)); })
        .def("__len__", &HFSet::size)
        .def("__hash__", &HFSet::hash)
        .def("__eq__", [](const HFSet& a, const HFSet& b) { return a == b; })
        .def("__lt__", [](const HFSet& a, const HFSet& b) { return a < b; })
        .def("__str__", &HFSet::to_string)
        .def("__repr__", [](const HFSet& s) { return "HFSet('" + s.to_string() + "')"; })
        .def("ackermann", [](const HFSet& s) { return ackermann(s); });

    m.def("numeral", &hf_from_numeral, py::arg("n"));
    m.def("trcl", [](const py::object& x) { return hf_trcl(to_set(x)); });
    m.def("universe", &enumerate_universe, py::arg("rank_bound"));

    m.def("encode", [](const py::sequence& sets, std::uint64_t seed) {
        return code_text(encode_args(to_sets(sets), seed));
    }, py::arg("sets"), py::arg("seed") = 0, "Code text with one component per set.");
    m.def("decode", [](const std::string& text) {
        const Marking x = parse_code_text(text);
        if (!is_well_formed(x)) throw py::value_error("marking is not well formed");
        return decode_marking(x);
    }, py::arg("code"));
    m.def("is_canonical", [](const std::string& text) { return is_canonical(parse_code_text(text)); });

    py::class_<MachineTable>(m, "Machine")
        .def_static("parse", &parse_table, py::arg("text"))
        .def_property_readonly("num_states", &MachineTable::num_states)
        .def_property_readonly("num_rules", &MachineTable::num_rules)
        .def("to_stm", &MachineTable::to_stm);

    m.def("stdlib_names", &stdlib_names);
    m.def("stdlib", [](const std::string& name) { return stdlib_machine(name); }, py::arg("name"));

    m.def("run", [](const py::object& machine, const py::object& input, std::uint64_t fuel,
                    std::uint64_t seed, bool delim) {
        const MachineTable t = to_machine(machine);
        Marking x = to_marking(input, seed);
        if (delim) x = delimit(x);
        py::gil_scoped_release nogil;
        auto r = run(t, x, fuel);
        py::gil_scoped_acquire gil;
        return outcome(r, t);
    }, py::arg("machine"), py::arg("input"), py::arg("fuel") = 1'000'000, py::arg("seed") = 0,
       py::arg("delimit") = false,
       "Runs a table (object, .stm text or stdlib name) on sets or code text.");

    m.def("fm_eval", [](const py::object& machine, const py::sequence& args, std::size_t num_codes,
                        std::uint64_t fuel) {
        return fm_eval(to_machine(machine), to_sets(args), num_codes, fuel);
    }, py::arg("machine"), py::arg("args"), py::arg("num_codes") = 5, py::arg("fuel") = 1'000'000);

    m.def("eval", [](const std::string& term, const py::sequence& args, std::uint64_t seed,
                     std::uint64_t fuel, const std::string& tier) {
        EvalEnv env;
        env.seed = seed;
        env.fuel = fuel;
        env.tier = parse_tier(tier);
        return eval(parse_rec(term, env.tier), to_sets(args), env);
    }, py::arg("term"), py::arg("args"), py::arg("seed") = 0, py::arg("fuel") = 1'000'000,
       py::arg("tier") = "REC");

    m.def("compile", [](const std::string& term) { return compile(parse_rec(term)); }, py::arg("term"));

    m.def("equiv", [](const std::string& term, std::size_t rank, std::size_t seeds, std::uint64_t fuel,
                      unsigned threads) {
        const RecTerm t = parse_rec(term);
        EquivReport rep;
        {
            py::gil_scoped_release nogil;
            rep = equiv_check(t, term, rank, seeds, fuel, threads);
        }
        py::dict d;
        d["ok"] = rep.ok();
        d["cases"] = rep.cases.size();
        d["agree"] = rep.agreements;
        d["disagree"] = rep.disagreements;
        d["fuel_out"] = rep.fuel_outs;
        d["crash"] = rep.crashes;
        d["undefined"] = rep.undefined;
        d["invariance_errors"] = rep.invariance_errors;
        d["json"] = rep.to_json();
        return d;
    }, py::arg("term"), py::arg("rank") = 2, py::arg("seeds") = 3, py::arg("fuel") = 10'000'000,
       py::arg("threads") = 0);
}
