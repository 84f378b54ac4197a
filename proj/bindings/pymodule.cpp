// Python bindings for the main operations. Exact values cross the boundary
// as strings ("2", "-1/3", ...) so nothing is ever rounded; plain ints and
// fractions.Fraction stringify to exactly that form.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffn/derived.hpp"
#include "diffn/io.hpp"
#include "diffn/verify.hpp"

namespace py = pybind11;
using namespace diffn;

namespace {

template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::Prime) return fn(GFp(spec));
    return fn(RatField());
}

template <class F>
Matrix<F> matrix_from_py(const F& field, std::size_t rows, std::size_t cols, const py::sequence& data) {
    if (py::len(data) != rows) throw InputError("expected " + std::to_string(rows) + " rows");
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        py::sequence row = data[i].cast<py::sequence>();
        if (py::len(row) != cols) throw InputError("expected " + std::to_string(cols) + " entries per row");
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = field.parse(py::str(row[j]).cast<std::string>());
    }
    return m;
}

template <class F>
std::vector<std::vector<std::string>> matrix_to_py(const Matrix<F>& m) {
    std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.field().to_string(m.at(i, j));
    return out;
}

struct PyDiffObject {
    AnyObject obj;

    template <class Fn>
    auto visit(Fn&& fn) const {
        return std::visit(std::forward<Fn>(fn), obj);
    }
};

struct PyDiffMorphism {
    AnyMorphism mor;

    template <class Fn>
    auto visit(Fn&& fn) const {
        return std::visit(std::forward<Fn>(fn), mor);
    }
};

template <class F>
const DiffObject<F>& expect(const PyDiffObject& o, const char* what) {
    auto* p = std::get_if<DiffObject<F>>(&o.obj);
    if (!p) throw InputError(std::string(what) + ": objects live over different fields");
    return *p;
}

PyDiffObject make_object(const std::string& field, int n, const py::sequence& rows) {
    FieldSpec spec = FieldSpec::parse(field);
    std::size_t d = py::len(rows);
    return with_field(spec, [&](auto f) -> PyDiffObject {
        return {AnyObject(DiffObject<decltype(f)>(f, n, matrix_from_py(f, d, d, rows)))};
    });
}

PyDiffMorphism make_morphism(const PyDiffObject& src, const PyDiffObject& dst, const py::sequence& rows) {
    return src.visit([&](const auto& s) -> PyDiffMorphism {
        using F = typename std::decay_t<decltype(s)>::field_type;
        const auto& d = expect<F>(dst, "morphism");
        return {AnyMorphism(DiffMorphism<F>(s, d, matrix_from_py(s.field(), d.dim(), s.dim(), rows)))};
    });
}

}  // namespace

PYBIND11_MODULE(_diffn, m) {
    m.doc() = "exact n-th differential modules over GF(p) and Q";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<PyDiffObject>(m, "Object")
        .def(py::init(&make_object), py::arg("field"), py::arg("n"), py::arg("eps"))
        .def_property_readonly("field", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return x.field().spec().name(); });
        })
        .def_property_readonly("n", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return x.n(); });
        })
        .def_property_readonly("dim", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return x.dim(); });
        })
        .def("eps", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return matrix_to_py(x.eps()); });
        })
        .def("jordan_type", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return x.type().parts; });
        })
        .def("homology_dim", [](const PyDiffObject& o, int r) {
            return o.visit([&](const auto& x) { return homology_dim(x, r); });
        })
        .def("homology_dims", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) {
                std::vector<std::size_t> dims;
                for (int r = 1; r < x.n(); ++r) dims.push_back(homology_dim(x, r));
                return dims;
            });
        })
        .def("is_acyclic", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return is_acyclic(x); });
        })
        .def("is_projective", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return is_projective(x); });
        })
        .def("is_zero_in_derived", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return zero_detection(x); });
        })
        .def("shift", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return PyDiffObject{AnyObject(shift(x))}; });
        })
        .def("coshift", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) { return PyDiffObject{AnyObject(coshift(x))}; });
        })
        .def("direct_sum", [](const PyDiffObject& o, const PyDiffObject& other) {
            return o.visit([&](const auto& x) {
                using F = typename std::decay_t<decltype(x)>::field_type;
                return PyDiffObject{AnyObject(direct_sum(x, expect<F>(other, "direct_sum")))};
            });
        })
        .def("minimal_model", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) {
                auto mm = minimal_model(x);
                return py::make_tuple(PyDiffObject{AnyObject(mm.reduced)}, mm.free_rank);
            });
        })
        .def("theta", [](const PyDiffObject& o, int i) {
            return o.visit([&](const auto& x) {
                auto th = theta_check(x, i);
                return py::make_tuple(th.dim_hom_k, th.dim_homology);
            });
        })
        .def("hom_k_dim", [](const PyDiffObject& o, const PyDiffObject& other) {
            return o.visit([&](const auto& x) {
                using F = typename std::decay_t<decltype(x)>::field_type;
                return hom_k_dim(x, expect<F>(other, "hom_k_dim"));
            });
        })
        .def("derived_hom_dim", [](const PyDiffObject& o, const PyDiffObject& other) {
            return o.visit([&](const auto& x) {
                using F = typename std::decay_t<decltype(x)>::field_type;
                return derived_hom_dim(x, expect<F>(other, "derived_hom_dim"));
            });
        })
        .def("is_isomorphic", [](const PyDiffObject& o, const PyDiffObject& other) {
            return o.visit([&](const auto& x) {
                using F = typename std::decay_t<decltype(x)>::field_type;
                return iso_witness(x, expect<F>(other, "is_isomorphic")).has_value();
            });
        })
        .def("to_dfn", [](const PyDiffObject& o) { return object_to_dfn(o.obj); })
        .def_static("from_dfn", [](const std::string& text) {
            return PyDiffObject{parse_object_text(text, "<python>")};
        })
        .def_static("augmented", [](const std::string& field, int n, std::size_t d) {
            return with_field(FieldSpec::parse(field), [&](auto f) {
                return PyDiffObject{AnyObject(augment(f, n, d))};
            });
        })
        .def_static("generator", [](const std::string& field, int n, int i) {
            return with_field(FieldSpec::parse(field), [&](auto f) {
                return PyDiffObject{AnyObject(compact_generator(f, n, i))};
            });
        })
        .def_static("zero", [](const std::string& field, int n) {
            return with_field(FieldSpec::parse(field), [&](auto f) {
                return PyDiffObject{AnyObject(DiffObject<decltype(f)>::zero(f, n))};
            });
        })
        .def("__repr__", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) {
                return "Object(field=" + x.field().spec().name() + ", n=" + std::to_string(x.n()) +
                       ", dim=" + std::to_string(x.dim()) + ", type=" + x.type().to_string() + ")";
            });
        });

    py::class_<PyDiffMorphism>(m, "Morphism")
        .def(py::init(&make_morphism), py::arg("src"), py::arg("dst"), py::arg("mat"))
        .def_property_readonly("src", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return PyDiffObject{AnyObject(g.src())}; });
        })
        .def_property_readonly("dst", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return PyDiffObject{AnyObject(g.dst())}; });
        })
        .def("mat", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return matrix_to_py(g.mat()); });
        })
        .def("is_null_homotopic", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return null_homotopy_witness(g).has_value(); });
        })
        .def("null_homotopy_witness", [](const PyDiffMorphism& f) -> py::object {
            return f.visit([](const auto& g) -> py::object {
                auto s = null_homotopy_witness(g);
                if (!s) return py::none();
                return py::cast(matrix_to_py(*s));
            });
        })
        .def("is_homotopic", [](const PyDiffMorphism& f, const PyDiffMorphism& other) {
            return f.visit([&](const auto& g) {
                using F = typename std::decay_t<decltype(g)>::field_type;
                auto* h = std::get_if<DiffMorphism<F>>(&other.mor);
                if (!h) throw InputError("morphisms live over different fields");
                return homotopic(g, *h);
            });
        })
        .def("is_quasi_iso", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return is_quasi_iso(g).is_qiso; });
        })
        .def("homology_matrix", [](const PyDiffMorphism& f, int r) {
            return f.visit([&](const auto& g) { return matrix_to_py(homology_map(g, r)); });
        })
        .def("cone", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) {
                auto tri = cone(g);
                return py::make_tuple(PyDiffObject{AnyObject(tri.cone_object())},
                                      PyDiffMorphism{AnyMorphism(tri.u)}, PyDiffMorphism{AnyMorphism(tri.v)});
            });
        })
        .def("shift", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) { return PyDiffMorphism{AnyMorphism(shift_morphism(g))}; });
        })
        .def_static("identity", [](const PyDiffObject& o) {
            return o.visit([](const auto& x) {
                return PyDiffMorphism{AnyMorphism(DiffMorphism<typename std::decay_t<decltype(x)>::field_type>::identity(x))};
            });
        })
        .def_static("zero", [](const PyDiffObject& src, const PyDiffObject& dst) {
            return src.visit([&](const auto& s) {
                using F = typename std::decay_t<decltype(s)>::field_type;
                return PyDiffMorphism{AnyMorphism(DiffMorphism<F>::zero(s, expect<F>(dst, "zero")))};
            });
        })
        .def("__repr__", [](const PyDiffMorphism& f) {
            return f.visit([](const auto& g) {
                return "Morphism(" + std::to_string(g.mat().rows()) + "x" + std::to_string(g.mat().cols()) + ")";
            });
        });

    m.def("property_names", &verify_property_names);
    m.def(
        "run_verify",
        [](std::uint64_t seed, const std::string& field, int n, std::size_t max_dim, std::size_t trials,
           const py::object& only) {
            GenConfig cfg;
            cfg.seed = seed;
            cfg.field = FieldSpec::parse(field);
            cfg.n = n;
            cfg.max_dim = max_dim;
            cfg.trials = trials;
            std::optional<std::string> sel;
            if (!only.is_none()) sel = only.cast<std::string>();
            VerifyReport report = run_verify(cfg, sel);
            py::dict out;
            out["ok"] = report.ok();
            out["failures"] = report.total_failures();
            out["body"] = report.body();
            return out;
        },
        py::arg("seed"), py::arg("field"), py::arg("n"), py::arg("max_dim"), py::arg("trials"),
        py::arg("only") = py::none());
}
