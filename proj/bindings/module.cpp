#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "petbox/equidist.hpp"
#include "petbox/experiment.hpp"
#include "petbox/norms.hpp"
#include "petbox/pet.hpp"

namespace py = pybind11;
using namespace petbox;

namespace {

Vec vec_from_list(const std::vector<long long>& v) {
    Vec out;
    out.reserve(v.size());
    for (long long c : v) out.push_back(Int(c));
    return out;
}

std::vector<long long> vec_to_list(const Vec& v) {
    std::vector<long long> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(c.to_ll());
    return out;
}

Multiset multiset_from_pairs(int dim, const std::vector<std::pair<std::vector<long long>, long long>>& entries) {
    Multiset m(dim);
    for (const auto& [v, w] : entries) m.add(vec_from_list(v), Int(w));
    return m;
}

std::vector<std::pair<std::vector<long long>, long long>> multiset_to_pairs(const Multiset& m) {
    std::vector<std::pair<std::vector<long long>, long long>> out;
    for (const auto& [v, w] : m.weights()) out.push_back({vec_to_list(v), w.to_ll()});
    return out;
}

LatticeFunction function_from_pairs(int dim, const std::vector<std::pair<std::vector<long long>, Complex>>& entries) {
    LatticeFunction f(dim);
    for (const auto& [x, v] : entries) f.set(vec_from_list(x), v);
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Box norms on Z^D, PET induction with direction tracking, and exact multilinear counting";

    py::register_exception<overflow_error>(m, "OverflowError2", PyExc_OverflowError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<cap_exceeded>(m, "CapExceeded", PyExc_RuntimeError);

    py::class_<Multiset>(m, "Multiset")
        .def(py::init(&multiset_from_pairs), py::arg("dim"), py::arg("entries"))
        .def_property_readonly("dim", &Multiset::dim)
        .def_property_readonly("total", [](const Multiset& s) { return s.total().to_ll(); })
        .def_property_readonly("support_size", &Multiset::support_size)
        .def("entries", &multiset_to_pairs)
        .def("__repr__", &Multiset::str)
        .def("__eq__", [](const Multiset& a, const Multiset& b) { return a == b; });

    m.def("progression", [](const std::vector<long long>& beta, long long h) { return progression(vec_from_list(beta), h); },
          py::arg("beta"), py::arg("half_length"));
    m.def("multiset_sum", &multiset_sum);
    m.def("multiset_negate", &multiset_negate);
    m.def("multiset_diff", &multiset_diff);
    m.def("fejer_weights", [](const Multiset& e) {
        std::vector<std::pair<std::vector<long long>, double>> out;
        for (const auto& [h, w] : fejer(e).weights()) out.push_back({vec_to_list(h), w.to_double()});
        return out;
    });
    m.def("gap_expand", [](int dim, const std::vector<std::pair<std::vector<long long>, long long>>& terms, long long cap) {
              Gap g;
              g.dim = dim;
              for (const auto& [d, h] : terms) g.terms.push_back({vec_from_list(d), Int(h)});
              return gap_expand(g, cap);
          },
          py::arg("dim"), py::arg("terms"), py::arg("cap") = kDefaultExpansionCap);

    py::class_<VectorPoly>(m, "VectorPoly")
        .def_static("parse", &VectorPoly::parse, py::arg("text"), py::arg("dim"), py::arg("num_h"))
        .def_property_readonly("dim", &VectorPoly::dim)
        .def_property_readonly("num_h", &VectorPoly::num_h)
        .def("eval", [](const VectorPoly& p, long long z, const std::vector<long long>& h) {
            std::vector<Int> hh;
            for (long long x : h) hh.push_back(Int(x));
            return vec_to_list(p.eval(Int(z), hh));
        })
        .def("deg_z", [](const VectorPoly& p) { return p.deg_z(); })
        .def("is_multilinear", &VectorPoly::is_multilinear)
        .def("__str__", &VectorPoly::str)
        .def("__repr__", &VectorPoly::str)
        .def("__eq__", [](const VectorPoly& a, const VectorPoly& b) { return a == b; });

    py::class_<PetTrace>(m, "PetTrace")
        .def_property_readonly("steps", [](const PetTrace& t) { return t.steps.size(); })
        .def_property_readonly("num_h_final", [](const PetTrace& t) { return t.num_h_final; })
        .def_property_readonly("directions", [](const PetTrace& t) { return t.directions; })
        .def_property_readonly("types", [](const PetTrace& t) {
            std::vector<std::vector<long long>> out;
            for (const auto& s : t.steps) out.push_back(s.type_before.counts);
            return out;
        })
        .def("__str__", &PetTrace::str);

    m.def("pet_run", [](const std::vector<std::string>& family, int dim, int target) {
              std::vector<VectorPoly> fam;
              for (const auto& s : family) fam.push_back(VectorPoly::parse(s, dim, 0));
              return pet_run(fam, target);
          },
          py::arg("family"), py::arg("dim"), py::arg("target") = 1);
    m.def("verify_descendence", [](const PetTrace& t) {
        DescendenceReport rep = verify_descendence(t);
        return py::make_tuple(rep.ok, rep.violations);
    });

    py::class_<LatticeFunction>(m, "LatticeFunction")
        .def(py::init(&function_from_pairs), py::arg("dim"), py::arg("values"))
        .def_static("indicator_box", [](const std::vector<long long>& lo, const std::vector<long long>& hi) {
            return LatticeFunction::indicator_box(vec_from_list(lo), vec_from_list(hi));
        })
        .def_static("random_pm1", [](const std::vector<long long>& lo, const std::vector<long long>& hi, std::uint64_t seed) {
            return LatticeFunction::random_pm1(vec_from_list(lo), vec_from_list(hi), seed);
        })
        .def_static("random_unimodular", [](const std::vector<long long>& lo, const std::vector<long long>& hi, std::uint64_t seed) {
            return LatticeFunction::random_unimodular(vec_from_list(lo), vec_from_list(hi), seed);
        })
        .def_property_readonly("dim", &LatticeFunction::dim)
        .def_property_readonly("support_size", &LatticeFunction::support_size);

    m.def("box_norm_power", [](const LatticeFunction& f, const std::vector<Multiset>& es, long long cap) {
              return box_norm_power(f, es, cap).power;
          },
          py::arg("f"), py::arg("multisets"), py::arg("max_states") = kDefaultMaxStates);
    m.def("box_norm_power_direct", [](const LatticeFunction& f, const std::vector<Multiset>& es, long long cap) {
              return box_norm_power_direct(f, es, cap).power;
          },
          py::arg("f"), py::arg("multisets"), py::arg("max_states") = kDefaultMaxStates);
    m.def("gcs_inner", [](const std::vector<LatticeFunction>& fs, const std::vector<Multiset>& es) {
        return gcs_inner(fs, es);
    });
    m.def("counting_operator", [](const std::vector<LatticeFunction>& fs, const std::vector<std::string>& ps, int dim, long long k) {
        std::vector<VectorPoly> polys;
        for (const auto& s : ps) polys.push_back(VectorPoly::parse(s, dim, 0));
        return counting_operator(fs, polys, k);
    });
    m.def("averaged_counting_operator", [](const LatticeFunction& f, const std::string& p, long long k, int r) {
        return averaged_counting_operator(f, VectorPoly::parse(p, 1, 0), k, r);
    });

    m.def("count_linear_solutions", [](const std::vector<long long>& h, long long m, long long t) {
        return count_linear_solutions(h, m, t).to_ll();
    });
    m.def("count_congruence_solutions", [](const std::vector<long long>& h, long long mod, long long m, long long t) {
        return count_congruence_solutions(h, mod, m, t).to_ll();
    });
    m.def("linear_bound_rhs", [](const std::vector<long long>& h, long long m) { return linear_bound_rhs(h, m).to_double(); });
    m.def("calK_size", [](int t, int ell, int r) { return calK_size(t, ell, r).to_ll(); });
    m.def("in_calH", [](const std::vector<long long>& values, int l, int t, double eta, long long h) {
        return in_calH(values, l, t, Rational(Int(static_cast<long long>(eta * 1000000)), Int(1000000)), h);
    });
    m.def("normalized_count_max", [](int t, int ell, long long h, long long m, double eta) {
        MultilinearSystem sys;
        sys.t = t;
        sys.ell = ell;
        sys.h_range = h;
        sys.m_range = m;
        sys.eta = Rational(Int(static_cast<long long>(eta * 1000000)), Int(1000000));
        auto res = normalized_count_max_exact(sys);
        return res.value.to_double();
    });

    m.def("run_scenario", [](const std::string& config_text) {
        ScenarioResult res = run_scenario(Json::parse(config_text));
        return py::make_tuple(res.exit_code, res.csv, res.log);
    });
}
