#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gck/algebroid.hpp"
#include "gck/fuzz.hpp"
#include "gck/structfile.hpp"

namespace py = pybind11;
using namespace gck;

namespace {

Rational rational_from_object(const py::object& o) {
    if (py::isinstance<Rational>(o)) return o.cast<Rational>();
    return Rational::from_string(py::str(o));
}

std::vector<Rational> point_from_list(const py::iterable& it) {
    std::vector<Rational> pt;
    for (const auto& o : it) pt.push_back(rational_from_object(py::reinterpret_borrow<py::object>(o)));
    return pt;
}

std::vector<RatPoly> parse_components(const Chart& c, const py::iterable& it) {
    std::vector<RatPoly> comps;
    for (const auto& o : it) comps.push_back(c.parse(py::str(o)));
    return comps;
}

PolyMatrix parse_matrix(const Chart& c, const py::iterable& rows) {
    std::vector<std::vector<std::string>> data;
    for (const auto& row : rows) {
        std::vector<std::string> r;
        for (const auto& cell : py::reinterpret_borrow<py::iterable>(row)) r.push_back(py::str(cell));
        data.push_back(std::move(r));
    }
    if (data.size() != c.dim()) throw GckError("matrix row count must equal the chart dimension");
    PolyMatrix m = PolyMatrix::zero(c.dim(), c.dim(), c.vars);
    for (size_t r = 0; r < c.dim(); ++r) {
        if (data[r].size() != c.dim()) throw GckError("matrix must be square");
        for (size_t col = 0; col < c.dim(); ++col) m.at(r, col) = c.parse(data[r][col]);
    }
    return m;
}

KForm two_form_from_dict(const Chart& c, const py::dict& d) {
    KForm f(c, 2);
    for (const auto& [k, v] : d) {
        std::string key = py::str(k);
        auto caret = key.find('^');
        if (caret == std::string::npos) throw GckError("2-form keys look like 'x^y'");
        std::string a = key.substr(0, caret), b = key.substr(caret + 1);
        size_t i = c.dim(), j = c.dim();
        for (size_t t = 0; t < c.dim(); ++t) {
            if (c.coords[t] == a) i = t;
            if (c.coords[t] == b) j = t;
        }
        if (i >= c.dim() || j >= c.dim() || i >= j)
            throw GckError("2-form key '" + key + "' is not an increasing coordinate pair");
        std::array<size_t, 2> idx{i, j};
        f.set_component(idx, c.parse(py::str(v)));
    }
    return f;
}

Bivector bivector_from_dict(const Chart& c, const py::dict& d) {
    KForm f = two_form_from_dict(c, d);
    Bivector pi(c);
    pi.comps = f.comps;
    return pi;
}

py::dict report_to_dict(const CheckReport& rep) {
    py::dict out;
    out["subject"] = rep.subject();
    out["certified"] = rep.certified();
    py::list defects;
    for (const auto& d : rep.defects()) {
        py::dict e;
        e["name"] = d.name;
        e["zero"] = d.zero;
        if (!d.zero) {
            e["defect"] = d.poly.to_string();
            if (d.witness) {
                py::dict w;
                py::dict point;
                for (size_t i = 0; i < d.witness->vars.size(); ++i)
                    point[py::str(d.witness->vars[i])] = d.witness->point[i].to_string();
                w["point"] = point;
                w["value"] = d.witness->value.to_string();
                e["witness"] = w;
            }
        }
        defects.append(e);
    }
    out["defects"] = defects;
    return out;
}

py::dict fuzz_to_dict(const FuzzSummary& s) {
    py::dict out;
    out["seed"] = s.seed;
    out["dim"] = s.dim;
    out["degree"] = s.degree;
    out["count"] = s.count;
    out["checks"] = s.checks;
    out["passes"] = s.passes;
    out["all_passed"] = s.all_passed();
    py::list props;
    for (const auto& [name, cell] : s.per_property) {
        py::dict e;
        e["property"] = name;
        e["passes"] = cell.first;
        e["total"] = cell.second;
        props.append(e);
    }
    out["properties"] = props;
    out["failures"] = s.failures;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact certification of generalized complex structures on coordinate charts";

    py::register_exception<GckError>(m, "GckError");

    py::class_<Rational>(m, "Rational")
        .def(py::init([](const py::object& o) { return rational_from_object(o); }))
        .def("__str__", &Rational::to_string)
        .def("__repr__",
             [](const Rational& r) { return "Rational('" + r.to_string() + "')"; })
        .def("__eq__", [](const Rational& a, const Rational& b) { return a == b; })
        .def("__add__", [](const Rational& a, const Rational& b) { return a + b; })
        .def("__sub__", [](const Rational& a, const Rational& b) { return a - b; })
        .def("__mul__", [](const Rational& a, const Rational& b) { return a * b; })
        .def("__truediv__", [](const Rational& a, const Rational& b) { return a / b; })
        .def("__neg__", [](const Rational& a) { return -a; })
        .def_property_readonly("is_zero", &Rational::is_zero);

    py::class_<Chart>(m, "Chart")
        .def(py::init<VarList>(), py::arg("coords"))
        .def_property_readonly("dim", &Chart::dim)
        .def_readonly("coords", &Chart::coords)
        .def("poly", &Chart::parse, py::arg("text"))
        .def("__eq__", [](const Chart& a, const Chart& b) { return a == b; })
        .def("__repr__", [](const Chart& c) {
            std::string s = "Chart([";
            for (size_t i = 0; i < c.coords.size(); ++i)
                s += (i ? ", '" : "'") + c.coords[i] + "'";
            return s + "])";
        });

    py::class_<RatPoly>(m, "RatPoly")
        .def("__str__", &RatPoly::to_string)
        .def("__repr__", [](const RatPoly& p) { return "RatPoly('" + p.to_string() + "')"; })
        .def("__eq__", [](const RatPoly& a, const RatPoly& b) { return a == b; })
        .def("__add__", [](const RatPoly& a, const RatPoly& b) { return a + b; })
        .def("__sub__", [](const RatPoly& a, const RatPoly& b) { return a - b; })
        .def("__mul__", [](const RatPoly& a, const RatPoly& b) { return a * b; })
        .def("__neg__", [](const RatPoly& a) { return -a; })
        .def_property_readonly("is_zero", &RatPoly::is_zero)
        .def("total_degree", &RatPoly::total_degree)
        .def("partial", &RatPoly::partial, py::arg("coordinate"))
        .def("eval", [](const RatPoly& p, const py::iterable& pt) {
            return p.eval(point_from_list(pt));
        });

    py::class_<VectorField>(m, "VectorField")
        .def(py::init([](const Chart& c, const py::iterable& comps) {
                 return VectorField(c, parse_components(c, comps));
             }),
             py::arg("chart"), py::arg("components"))
        .def_property_readonly("is_zero", &VectorField::is_zero)
        .def("__eq__", [](const VectorField& a, const VectorField& b) { return a == b; });

    py::class_<KForm>(m, "KForm")
        .def(py::init([](const Chart& c, size_t degree, const py::object& comps) {
                 if (degree == 1)
                     return KForm(c, 1, parse_components(c, comps.cast<py::iterable>()));
                 if (degree == 2) return two_form_from_dict(c, comps.cast<py::dict>());
                 throw GckError("python constructor covers degrees 1 and 2");
             }),
             py::arg("chart"), py::arg("degree"), py::arg("components"))
        .def_readonly("degree", &KForm::degree)
        .def_property_readonly("is_zero", &KForm::is_zero)
        .def("__add__", [](const KForm& a, const KForm& b) { return a + b; })
        .def("__sub__", [](const KForm& a, const KForm& b) { return a - b; })
        .def("__neg__", [](const KForm& a) { return -a; })
        .def("__eq__", [](const KForm& a, const KForm& b) { return a == b; });

    py::class_<Bivector>(m, "Bivector")
        .def(py::init([](const Chart& c, const py::dict& comps) {
                 return bivector_from_dict(c, comps);
             }),
             py::arg("chart"), py::arg("components"))
        .def_property_readonly("is_zero", &Bivector::is_zero)
        .def("__neg__", [](const Bivector& a) { return -a; })
        .def("__eq__", [](const Bivector& a, const Bivector& b) { return a == b; });

    py::class_<EndoField>(m, "EndoField")
        .def(py::init([](const Chart& c, const py::iterable& rows) {
                 return EndoField(c, parse_matrix(c, rows));
             }),
             py::arg("chart"), py::arg("matrix"))
        .def("__eq__", [](const EndoField& a, const EndoField& b) { return a == b; });

    py::class_<PolyMap>(m, "PolyMap")
        .def(py::init([](const Chart& src, const Chart& dst, const py::iterable& comps) {
                 std::vector<RatPoly> v;
                 for (const auto& o : comps) v.push_back(src.parse(py::str(o)));
                 return PolyMap(src, dst, std::move(v));
             }),
             py::arg("source"), py::arg("target"), py::arg("components"));

    py::class_<GeneralizedStructure>(m, "GeneralizedStructure")
        .def(py::init<EndoField, Bivector, KForm>(), py::arg("a"), py::arg("pi"),
             py::arg("sigma"))
        .def_readonly("a", &GeneralizedStructure::a)
        .def_readonly("pi", &GeneralizedStructure::pi)
        .def_readonly("sigma", &GeneralizedStructure::sigma);

    py::class_<HitchinPair>(m, "HitchinPair")
        .def(py::init<KForm, EndoField>(), py::arg("omega"), py::arg("a"))
        .def_readonly("omega", &HitchinPair::omega)
        .def_readonly("a", &HitchinPair::a);

    py::class_<HitchinGroupoidCandidate>(m, "HitchinGroupoidCandidate")
        .def_readonly("omega_S", &HitchinGroupoidCandidate::omega_S)
        .def_readonly("J_S", &HitchinGroupoidCandidate::J_S)
        .def_readonly("sigma", &HitchinGroupoidCandidate::sigma)
        .def_readonly("base_pair", &HitchinGroupoidCandidate::base_pair);

    // Checks. Every report comes back as a plain dict.
    m.def("check_gcs", [](const GeneralizedStructure& s) { return report_to_dict(check_gcs(s)); });
    m.def("check_C1", [](const Bivector& pi) { return report_to_dict(check_C1(pi)); });
    m.def("check_C2", [](const Bivector& pi, const EndoField& a) {
        return report_to_dict(check_C2(pi, a));
    });
    m.def("check_C3", [](const Bivector& pi, const EndoField& a, const KForm& sigma) {
        return report_to_dict(check_C3(pi, a, sigma));
    });
    m.def("check_C4", [](const EndoField& a, const KForm& sigma) {
        return report_to_dict(check_C4(a, sigma));
    });
    m.def("dirac_check", [](const Bivector& pi, const EndoField& a) {
        return report_to_dict(dirac_check(pi, a));
    });
    m.def("eigenspace_check", [](const GeneralizedStructure& s, const py::iterable& pt) {
        return report_to_dict(eigenspace_check(s, point_from_list(pt)));
    });
    m.def("integrability_report",
          [](const GeneralizedStructure& s) { return report_to_dict(integrability_report(s)); });
    m.def("check_hitchin_pair",
          [](const HitchinPair& p) { return report_to_dict(check_hitchin_pair(p)); });
    m.def("sc_structure_check", [](const KForm& omega, const EndoField& j) {
        return report_to_dict(sc_structure_check(omega, j));
    });
    m.def("torsion_identity_defect", [](const KForm& omega, const EndoField& a) {
        return report_to_dict(torsion_identity_defect(omega, a));
    });
    m.def("check_im_form", [](const Bivector& pi, const EndoField& u) {
        CheckReport c1 = check_C1(pi);
        if (!c1.certified()) return report_to_dict(c1);
        return report_to_dict(check_im_form(PoissonAlgebroid(pi), u.m));
    });
    m.def("check_gholomorphic", [](const PolyMap& f, const GeneralizedStructure& src,
                                   const GeneralizedStructure& dst) {
        return report_to_dict(check_gholomorphic(GHolMapCandidate(f, src, dst)));
    });

    // Conversions and constructions.
    m.def("opposite", &opposite);
    m.def("gauge", &gauge, py::arg("structure"), py::arg("B"));
    m.def("hitchin_to_gcs", &hitchin_to_gcs);
    m.def("gcs_to_hitchin", &gcs_to_hitchin);
    m.def("twist", &twist);
    m.def("build_pair_hitchin_groupoid", &build_pair_hitchin_groupoid);
    m.def("check_hitchin_groupoid", [](const HitchinGroupoidCandidate& c) {
        return report_to_dict(check_hitchin_groupoid(c));
    });
    m.def("check_ts_gholomorphic", [](const HitchinGroupoidCandidate& c) {
        return report_to_dict(check_ts_gholomorphic(c));
    });
    m.def("groupoid_gauge", &groupoid_gauge, py::arg("candidate"), py::arg("B"));

    // Structure files.
    m.def("parse_check", [](const std::string& text, const std::string& target,
                            const std::string& suite) {
        StructureFile f = parse_structure_file(text);
        if (suite == "gcs") return report_to_dict(check_gcs(resolve_gcs(f, target)));
        if (suite == "hitchin")
            return report_to_dict(check_hitchin_pair(resolve_hitchin(f, target)));
        throw GckError("parse_check covers the gcs and hitchin suites; use the CLI for the rest");
    });

    m.def("fuzz", [](uint64_t seed, size_t dim, uint32_t degree, size_t count) {
        return fuzz_to_dict(run_fuzz_suite(seed, dim, degree, count));
    },
          py::arg("seed") = 1, py::arg("dim") = 2, py::arg("degree") = 1, py::arg("count") = 20);
}
