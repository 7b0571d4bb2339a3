#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "apnspectra/analysis.hpp"
#include "apnspectra/families.hpp"
#include "apnspectra/quadratic.hpp"

namespace py = pybind11;
using namespace apnspectra;

namespace {

// Python-side handle: FieldSpec is shared as pointer-to-const, which does
// not fit a pybind holder, so wrap the shared_ptr in a plain value type.
struct PyField {
    FieldPtr f;
};

FamilyParams params_from_kwargs(Family fam, int n, const py::kwargs& kw) {
    FamilyParams fp = default_params(fam, n);
    for (auto item : kw) {
        auto key = item.first.cast<std::string>();
        if (key == "k") fp.k = item.second.cast<int>();
        else if (key == "s") fp.s = item.second.cast<int>();
        else if (key == "i") fp.i = item.second.cast<int>();
        else if (key == "m") fp.m = item.second.cast<int>();
        else if (key == "d") fp.d = item.second.cast<int>();
        else if (key == "v") fp.v = item.second.cast<std::uint32_t>();
        else if (key == "w") fp.w = item.second.cast<std::uint32_t>();
        else if (key == "gammas") fp.gammas = item.second.cast<std::vector<std::uint32_t>>();
        else if (key == "t") fp.t = item.second.cast<std::uint32_t>();
        else if (key == "beta") fp.beta = item.second.cast<std::uint32_t>();
        else if (key == "u") fp.u_elem = item.second.cast<std::uint32_t>();
        else throw std::invalid_argument("unknown family parameter: " + key);
    }
    return fp;
}

py::dict spectrum_dict(const WalshSpectrum& sp) {
    py::dict d;
    py::dict counts;
    for (auto [v, c] : sp.counts) counts[py::int_(v)] = py::int_(c);
    d["n"] = sp.n;
    d["counts"] = counts;
    d["values"] = sp.value_set();
    d["max_abs"] = sp.max_abs();
    d["nonlinearity"] = nonlinearity(sp);
    if (sp.sampled_b) d["sampled_b"] = *sp.sampled_b;
    return d;
}

py::dict diff_dict(const DiffSpectrum& ds) {
    py::dict d;
    py::dict counts;
    for (auto [c, m] : ds.counts) counts[py::int_(c)] = py::int_(m);
    d["counts"] = counts;
    d["uniformity"] = ds.max_count;
    d["is_apn"] = ds.is_apn();
    return d;
}

}  // namespace

PYBIND11_MODULE(_apnspectra, m) {
    m.doc() = "finite-field spectra of quadratic APN functions";

    py::register_exception<InvalidParams>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<CheckFailure>(m, "CheckFailureError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "PolyParseError", PyExc_ValueError);

    py::class_<PyField>(m, "Field")
        .def_property_readonly("n", [](const PyField& f) { return f.f->degree(); })
        .def_property_readonly("poly",
                               [](const PyField& f) { return f.f->reduction_poly(); })
        .def_property_readonly("order", [](const PyField& f) { return f.f->order(); })
        .def_property_readonly("alpha", [](const PyField& f) { return f.f->alpha_bits(); })
        .def("add", [](const PyField& f, std::uint32_t a, std::uint32_t b) {
            return f.f->add_raw(a, b);
        })
        .def("mul", [](const PyField& f, std::uint32_t a, std::uint32_t b) {
            return f.f->mul_raw(a, b);
        })
        .def("inv", [](const PyField& f, std::uint32_t a) { return f.f->inv_raw(a); })
        .def("pow", [](const PyField& f, std::uint32_t a, std::int64_t e) {
            return f.f->pow_raw(a, e);
        })
        .def("frobenius", [](const PyField& f, std::uint32_t a, int i) {
            return f.f->frobenius_raw(a, i);
        })
        .def("trace", [](const PyField& f, std::uint32_t a) { return f.f->trace_raw(a); })
        .def("rel_trace", [](const PyField& f, std::uint32_t a, int k) {
            return f.f->rel_trace_raw(a, k);
        })
        .def("is_primitive",
             [](const PyField& f, std::uint32_t a) { return f.f->is_primitive_raw(a); })
        .def("in_subfield", [](const PyField& f, std::uint32_t a, int k) {
            return f.f->in_subfield(a, k);
        })
        .def("__repr__", [](const PyField& f) {
            return "Field(n=" + std::to_string(f.f->degree()) + ", poly=" +
                   to_hex(f.f->reduction_poly()) + ")";
        });

    m.def(
        "make_field",
        [](int n, std::optional<std::uint32_t> poly) { return PyField{make_field(n, poly)}; },
        py::arg("n"), py::arg("poly") = std::nullopt);

    py::class_<FunctionTable>(m, "FunctionTable")
        .def_readonly("values", &FunctionTable::values)
        .def_readonly("provenance", &FunctionTable::provenance)
        .def_property_readonly("field",
                               [](const FunctionTable& t) { return PyField{t.spec}; })
        .def("__call__", &FunctionTable::at)
        .def("__len__", &FunctionTable::size);

    m.def(
        "build_family",
        [](const std::string& name, const PyField& f, const py::kwargs& kw) {
            auto fam = parse_family(name);
            if (!fam) throw std::invalid_argument("unknown family: " + name);
            return build_family(params_from_kwargs(*fam, f.f->degree(), kw), f.f);
        },
        py::arg("family"), py::arg("field"));

    m.def(
        "parse_poly",
        [](const std::string& text, const PyField& f) {
            return tabulate(SparsePoly::parse(text, f.f), text);
        },
        py::arg("text"), py::arg("field"));

    m.def("is_quadratic", &is_quadratic);
    m.def("walsh_point", &walsh_point);
    m.def("walsh_row", &walsh_row);
    m.def(
        "full_spectrum",
        [](const FunctionTable& t, int threads) {
            return spectrum_dict(full_spectrum(t, threads));
        },
        py::arg("table"), py::arg("threads") = 0);
    m.def(
        "sampled_spectrum",
        [](const FunctionTable& t, std::size_t sample_b, std::uint64_t seed, int threads) {
            return spectrum_dict(sampled_spectrum(t, sample_b, seed, threads));
        },
        py::arg("table"), py::arg("sample_b"), py::arg("seed"), py::arg("threads") = 0);
    m.def(
        "diff_spectrum",
        [](const FunctionTable& t, int threads) { return diff_dict(diff_spectrum(t, threads)); },
        py::arg("table"), py::arg("threads") = 0);

    m.def(
        "kernel_dim",
        [](const FunctionTable& t, std::uint32_t b) {
            return kernel_map_generic(t, b).kernel_dim();
        },
        py::arg("table"), py::arg("b"));
    m.def(
        "kernel_elements",
        [](const FunctionTable& t, std::uint32_t b) {
            return kernel_map_generic(t, b).kernel_elements();
        },
        py::arg("table"), py::arg("b"));

    m.def(
        "verify_proof",
        [](const PyField& f, std::uint32_t b, const py::kwargs& kw) {
            auto fp = params_from_kwargs(Family::F5, f.f->degree(), kw);
            auto tr = proof_trace_f5(fp, f.f, b);
            py::dict d;
            d["b"] = tr.b;
            d["theta"] = tr.theta;
            d["kernel_dim"] = tr.kernel_dim;
            d["t_image_values"] = tr.t_image_values;
            d["pass"] = tr.all_pass();
            d["failed"] = tr.failed_checks();
            return d;
        },
        py::arg("field"), py::arg("b"));

    m.def("export_table", [](const FunctionTable& t) {
        std::ostringstream os;
        export_table(t, os);
        return os.str();
    });
    m.def("import_table", [](const std::string& text, const PyField& f) {
        std::istringstream is(text);
        return import_table(is, f.f);
    });
}
