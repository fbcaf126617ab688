#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collig/calculus.hpp"
#include "collig/repn.hpp"
#include "collig/serialize.hpp"
#include "collig/verify.hpp"

namespace py = pybind11;
using namespace collig;

namespace {

// numpy arrays may carry NaN/inf; reject them before they reach the core.
const ComplexMatrix& finite(const ComplexMatrix& m, const char* what) {
    if (!all_finite(m)) throw InvalidArgument(std::string(what) + ": non-finite entries");
    return m;
}

ToleranceConfig tolerance(double atol) {
    ToleranceConfig tol;
    tol.atol = atol;
    tol.validate();
    return tol;
}

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["theorem_id"] = r.theorem_id;
    d["trials"] = r.trials;
    d["max_error"] = r.max_error;
    d["skipped"] = r.skipped;
    d["tolerance"] = r.tolerance;
    d["pass"] = r.pass;
    d["runtime_ms"] = r.runtime_ms;
    d["seed"] = r.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_collig, m) {
    m.doc() = "Unitary colligations and their characteristic functions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<SingularPivot>(m, "SingularPivot", base.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", base.ptr());
    py::register_exception<NotInterior>(m, "NotInterior", base.ptr());
    py::register_exception<NotInBall>(m, "NotInBall", base.ptr());
    py::register_exception<NotOnBoundary>(m, "NotOnBoundary", base.ptr());
    py::register_exception<CompositionSingular>(m, "CompositionSingular", base.ptr());
    py::register_exception<NotBlockDiagonal>(m, "NotBlockDiagonal", base.ptr());
    py::register_exception<SplitSingular>(m, "SplitSingular", base.ptr());
    py::register_exception<SingularOnComponent>(m, "SingularOnComponent", base.ptr());
    py::register_exception<ImageNotInComponent>(m, "ImageNotInComponent", base.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
    py::register_exception<UnknownTheorem>(m, "UnknownTheorem", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::class_<Colligation>(m, "Colligation")
        .def(py::init([](Index alpha, Index mm, Index j, const ComplexMatrix& u, double atol) {
                 return Colligation(alpha, mm, j, u, tolerance(atol));
             }),
             py::arg("alpha"), py::arg("m"), py::arg("j"), py::arg("matrix"), py::arg("atol") = 1e-9)
        .def_static("constant",
                    [](const ComplexMatrix& a, Index mm) { return Colligation::constant(finite(a, "constant"), mm); },
                    py::arg("a"), py::arg("m"))
        .def_static("random",
                    [](Index alpha, Index mm, Index j, std::uint64_t seed) {
                        Rng rng(seed);
                        return Colligation::random(alpha, mm, j, rng);
                    },
                    py::arg("alpha"), py::arg("m"), py::arg("j"), py::arg("seed") = 0)
        .def_property_readonly("alpha", &Colligation::alpha)
        .def_property_readonly("m", &Colligation::m)
        .def_property_readonly("j", &Colligation::j)
        .def_property_readonly("matrix", &Colligation::matrix)
        .def_property_readonly("a", &Colligation::a)
        .def_property_readonly("b", &Colligation::b)
        .def_property_readonly("c", &Colligation::c)
        .def_property_readonly("d", &Colligation::d)
        .def("__call__", [](const Colligation& g, const ComplexMatrix& s) { return theta_eval(g, finite(s, "theta")); })
        .def("__repr__", [](const Colligation& g) {
            return "<Colligation alpha=" + std::to_string(g.alpha()) + " m=" + std::to_string(g.m()) +
                   " j=" + std::to_string(g.j()) + ">";
        });

    py::class_<KSMorphism>(m, "KSMorphism")
        .def(py::init([](Index n, Index mm, const ComplexMatrix& z) { return KSMorphism(n, mm, z); }), py::arg("n"),
             py::arg("m"), py::arg("matrix"))
        .def_property_readonly("n", &KSMorphism::n)
        .def_property_readonly("m", &KSMorphism::m)
        .def_property_readonly("matrix", &KSMorphism::zeta);

    m.def("haar_unitary", py::overload_cast<Index, std::uint64_t>(&haar_unitary), py::arg("n"), py::arg("seed") = 0);
    m.def("sample_ball_point", py::overload_cast<Index, double, std::uint64_t>(&sample_ball_point), py::arg("m"),
          py::arg("radius") = 0.9, py::arg("seed") = 0);
    m.def("op_norm", [](const ComplexMatrix& z) { return op_norm(finite(z, "op_norm")); });
    m.def("is_unitary", [](const ComplexMatrix& u, double atol) { return is_unitary(u, tolerance(atol)); },
          py::arg("u"), py::arg("atol") = 1e-9);

    m.def("mobius", [](const ComplexMatrix& g, const ComplexMatrix& z) {
        return mobius(finite(g, "mobius"), finite(z, "mobius"));
    });
    m.def("ks_map", [](const KSMorphism& k, const ComplexMatrix& u) { return ks_map(k, finite(u, "ks_map")); });
    m.def("circledast", [](const KSMorphism& a, const KSMorphism& b) { return circledast(a, b); });
    m.def("transvection_to", [](const ComplexMatrix& s0) { return transvection_to(finite(s0, "transvection_to")); });
    m.def("defect_rank", [](const ComplexMatrix& u) { return stratum(finite(u, "defect_rank")).defect_rank; });

    m.def("theta_eval", [](const Colligation& g, const ComplexMatrix& s) { return theta_eval(g, finite(s, "theta_eval")); },
          py::arg("g"), py::arg("s"));
    m.def("theta_oracle",
          [](const Colligation& g, const ComplexMatrix& s, const ComplexMatrix& q) {
              return theta_oracle(g, finite(s, "theta_oracle"), finite(q, "theta_oracle"));
          },
          py::arg("g"), py::arg("s"), py::arg("q"));
    m.def("certify_inner",
          [](const Colligation& g, std::size_t trials, std::uint64_t seed) {
              const InnerCertificate c = certify_inner(g, trials, seed);
              py::dict d;
              d["trials"] = c.trials;
              d["max_unitarity_defect"] = c.max_unitarity_defect;
              d["max_interior_norm_excess"] = c.max_interior_norm_excess;
              d["skipped_singular"] = c.skipped_singular;
              return d;
          },
          py::arg("g"), py::arg("trials") = 100, py::arg("seed") = 0);

    m.def("direct_sum", [](const Colligation& g, const Colligation& h) { return direct_sum(g, h); });
    m.def("odot_product", [](const Colligation& g, const Colligation& h) { return odot_product(g, h); });
    m.def("tensor_product", [](const Colligation& g, const Colligation& h) { return tensor_product(g, h); });
    m.def("compose",
          [](const Colligation& outer, const Colligation& inner, std::optional<ComplexMatrix> probe) {
              if (probe) finite(*probe, "compose");
              return compose(outer, inner, probe);
          },
          py::arg("outer"), py::arg("inner"), py::arg("probe") = py::none());
    m.def("split_off",
          [](const Colligation& f, Index alpha1, Index alpha2) {
              const SplitResult r = split_off(f, SplitSpec{alpha1, alpha2});
              return py::make_tuple(r.first, r.second);
          },
          py::arg("f"), py::arg("alpha1"), py::arg("alpha2"));
    m.def("restrict_to_component",
          [](const Colligation& f, Index k, std::optional<ComplexMatrix> reducer) {
              BoundaryComponent c = BoundaryComponent::canonical(f.m(), k);
              if (reducer) c.reducer = finite(*reducer, "restrict_to_component");
              return restrict_to_component(f, c);
          },
          py::arg("f"), py::arg("k"), py::arg("reducer") = py::none());
    m.def("corestrict_from_component",
          [](const Colligation& f, Index k) {
              CorestrictResult r = corestrict_from_component(f, k);
              return py::make_tuple(r.moving, r.canonicalizer);
          },
          py::arg("f"), py::arg("k"));

    py::class_<PolyRep>(m, "PolyRep")
        .def_property_readonly("parts", [](const PolyRep& r) { return r.signature.parts(); })
        .def_readonly("n", &PolyRep::n)
        .def_readonly("dim", &PolyRep::dim)
        .def_readonly("ambient_dim", &PolyRep::ambient_dim)
        .def_readonly("embed", &PolyRep::embed);
    m.def("weyl_dim", [](std::vector<int> parts) { return weyl_dim(Signature(std::move(parts))); });
    m.def("wedge_rep", [](Index k, const ComplexMatrix& g) { return wedge_rep(k, finite(g, "wedge_rep")); });
    m.def("build_irrep",
          [](std::vector<int> parts, std::uint64_t seed) { return build_irrep(Signature(std::move(parts)), seed); },
          py::arg("parts"), py::arg("seed") = 0);
    m.def("rep_apply", [](const PolyRep& r, const ComplexMatrix& g) { return rep_apply(r, finite(g, "rep_apply")); });
    m.def("rep_compose_colligation", [](const PolyRep& r, const Colligation& f) { return rep_compose_colligation(r, f); });

    m.def("serialize", [](const Colligation& g) { return serialize(g); });
    m.def("deserialize_colligation", [](const std::string& text) { return colligation_from_json(parse_json(text)); });

    m.def("theorem_ids", &theorem_ids);
    m.def("run_verify",
          [](const std::string& id, std::size_t trials, std::uint64_t seed, std::optional<double> threshold) {
              VerifyOptions o;
              o.trials = trials;
              o.seed = seed;
              o.threshold = threshold;
              return report_dict(run_verify(id, o));
          },
          py::arg("theorem_id"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("threshold") = py::none());
}
