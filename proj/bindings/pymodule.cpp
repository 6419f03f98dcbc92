#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obliq/cavity.hpp"
#include "obliq/decompose.hpp"
#include "obliq/functional.hpp"
#include "obliq/l2model.hpp"

namespace py = pybind11;
using namespace obliq;

namespace {

// shared_ptr<const HilbertSpace> is awkward as a pybind holder; wrap it.
struct PySpace {
    SpacePtr ptr;
};

Vector as_vector(const PySpace& s, const ColVec& coeffs) {
    return make_vector(s.ptr, coeffs);
}

L2ModelConfig config_from(const RealVec& thetas) {
    return L2ModelConfig{thetas.size(), thetas};
}

} // namespace

PYBIND11_MODULE(_obliq, m) {
    m.doc() = "metric-aware subspace geometry: inclination, certified "
              "decompositions, functional extensions, box-resonator studies";

    py::register_exception<Error>(m, "ObliqError");

    py::class_<PySpace>(m, "Space")
        .def_property_readonly("dim",
                               [](const PySpace& s) { return s.ptr->dim(); })
        .def_property_readonly(
            "gram", [](const PySpace& s) -> Matrix { return s.ptr->gram(); })
        .def_property_readonly(
            "label", [](const PySpace& s) { return s.ptr->label(); })
        .def("__repr__", [](const PySpace& s) {
            return "<Space dim=" + std::to_string(s.ptr->dim()) + ">";
        });

    py::class_<Subspace>(m, "Subspace")
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
        .def_property_readonly(
            "basis", [](const Subspace& s) -> Matrix { return s.basis(); })
        .def("__repr__", [](const Subspace& s) {
            return "<Subspace " + std::to_string(s.dim()) + " of " +
                   std::to_string(s.ambient_dim()) + ">";
        });

    py::class_<InclinationReport>(m, "InclinationReport")
        .def_readonly("c", &InclinationReport::c)
        .def_readonly("q_dim", &InclinationReport::q_dim)
        .def_readonly("angles", &InclinationReport::angles)
        .def_readonly("near_degenerate", &InclinationReport::near_degenerate)
        .def_property_readonly(
            "containment",
            [](const InclinationReport& r) { return std::string(to_string(r.containment)); })
        .def_readonly("q", &InclinationReport::q)
        .def_readonly("l_reduced", &InclinationReport::l_reduced)
        .def_readonly("m_reduced", &InclinationReport::m_reduced)
        .def_property_readonly(
            "u_top",
            [](const InclinationReport& r) -> ColVec { return r.u_top.coeffs; })
        .def_property_readonly(
            "v_top",
            [](const InclinationReport& r) -> ColVec { return r.v_top.coeffs; });

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("a1", &Decomposition::a1)
        .def_readonly("a2", &Decomposition::a2)
        .def_readonly("c", &Decomposition::c)
        .def_readonly("A1", &Decomposition::A1)
        .def_readonly("A2", &Decomposition::A2)
        .def_readonly("residual", &Decomposition::residual)
        .def_property_readonly(
            "y_hat", [](const Decomposition& d) -> ColVec { return d.y_hat.coeffs; })
        .def_property_readonly(
            "xl_hat",
            [](const Decomposition& d) -> ColVec { return d.xl_hat.coeffs; })
        .def_property_readonly(
            "xm_hat",
            [](const Decomposition& d) -> ColVec { return d.xm_hat.coeffs; })
        .def_property_readonly(
            "xl", [](const Decomposition& d) -> ColVec { return d.xl.coeffs; })
        .def_property_readonly(
            "xm", [](const Decomposition& d) -> ColVec { return d.xm.coeffs; });

    py::class_<ExtensionReport>(m, "ExtensionReport")
        .def_readonly("c", &ExtensionReport::c)
        .def_readonly("norm_f_l", &ExtensionReport::norm_f_l)
        .def_readonly("norm_f_tilde", &ExtensionReport::norm_f_tilde)
        .def_readonly("bound", &ExtensionReport::bound)
        .def_readonly("on_l_error", &ExtensionReport::on_l_error)
        .def_readonly("on_m_error", &ExtensionReport::on_m_error)
        .def_property_readonly("riesz_tilde", [](const ExtensionReport& e) -> ColVec {
            return e.f_tilde.riesz.coeffs;
        });

    m.def(
        "make_space",
        [](const Matrix& gram, const std::string& label) {
            return PySpace{make_space(gram, label)};
        },
        py::arg("gram"), py::arg("label") = "");
    m.def(
        "euclidean",
        [](Eigen::Index dim) { return PySpace{make_euclidean(dim)}; },
        py::arg("dim"));
    m.def(
        "inner",
        [](const PySpace& s, const ColVec& x, const ColVec& y) {
            return inner(as_vector(s, x), as_vector(s, y));
        },
        py::arg("space"), py::arg("x"), py::arg("y"),
        "(x, y) = y^H G x: linear in x, conjugate-linear in y");
    m.def(
        "norm",
        [](const PySpace& s, const ColVec& x) { return norm(as_vector(s, x)); },
        py::arg("space"), py::arg("x"));
    m.def(
        "span",
        [](const PySpace& s, const Matrix& generators, double rank_tol) {
            return span(s.ptr, generators, rank_tol);
        },
        py::arg("space"), py::arg("generators"),
        py::arg("rank_tol") = kDefaultRankTol);
    m.def(
        "project",
        [](const Subspace& sub, const ColVec& x) -> ColVec {
            return project(sub, Vector{sub.space(), x}).coeffs;
        },
        py::arg("subspace"), py::arg("x"));
    m.def("intersect", &intersect, py::arg("l"), py::arg("m"),
          py::arg("tol") = kDefaultIntersectTol);
    m.def("ominus", &ominus, py::arg("l"), py::arg("q"),
          py::arg("tol") = kDefaultIntersectTol);
    m.def("subspace_sum", &sum, py::arg("l"), py::arg("m"),
          py::arg("rank_tol") = kDefaultRankTol);
    m.def("perp", &perp, py::arg("s"));
    m.def("inclination", &inclination, py::arg("l"), py::arg("m"),
          py::arg("tol") = kDefaultIntersectTol);
    m.def("inclination_oracle", &inclination_oracle, py::arg("l"), py::arg("m"),
          py::arg("tol") = kDefaultIntersectTol);

    m.def(
        "decompose",
        [](const Subspace& l, const Subspace& m_sub, const ColVec& x, double a1,
           double tol) {
            return decompose(l, m_sub, Vector{l.space(), x}, a1, tol);
        },
        py::arg("l"), py::arg("m"), py::arg("x"), py::arg("a1") = 0.5,
        py::arg("tol") = kDefaultIntersectTol);
    m.def(
        "sum_dense_check",
        [](const Subspace& l, const Subspace& m_sub) {
            SumDenseReport r = sum_dense_check(l, m_sub);
            return py::make_tuple(r.dense, r.defect);
        },
        py::arg("l"), py::arg("m"));
    m.def(
        "verify_bounds",
        [](const Decomposition& d) {
            BoundsReport r = verify_bounds(d);
            py::dict out;
            out["x_norm"] = r.x_norm;
            out["y_hat_slack"] = r.y_hat_slack;
            out["xl_hat_slack"] = r.xl_hat_slack;
            out["xm_hat_slack"] = r.xm_hat_slack;
            out["xl_slack"] = r.xl_slack;
            out["xm_slack"] = r.xm_slack;
            out["residual"] = r.residual;
            out["ok"] = r.ok;
            return out;
        },
        py::arg("decomposition"));

    m.def(
        "restriction_norm",
        [](const PySpace& s, const ColVec& w, const Subspace& sub) {
            return restriction_norm(make_functional(s.ptr, w), sub);
        },
        py::arg("space"), py::arg("w"), py::arg("s"));
    m.def(
        "in_fq",
        [](const PySpace& s, const ColVec& w, const Subspace& l,
           const Subspace& m_sub, double tol) {
            return in_fq(make_functional(s.ptr, w), l, m_sub, tol);
        },
        py::arg("space"), py::arg("w"), py::arg("l"), py::arg("m"),
        py::arg("tol") = kDefaultIntersectTol);
    m.def(
        "extend",
        [](const PySpace& s, const ColVec& w, const Subspace& l,
           const Subspace& m_sub, double tol) {
            return extend(make_functional(s.ptr, w), l, m_sub, tol);
        },
        py::arg("space"), py::arg("w"), py::arg("l"), py::arg("m"),
        py::arg("tol") = kDefaultIntersectTol);

    // l2 fixture: everything is keyed by the theta list.
    m.def(
        "l2_build",
        [](const RealVec& thetas) {
            L2Model model = build_l2(config_from(thetas));
            return py::make_tuple(PySpace{model.space}, model.l, model.m);
        },
        py::arg("thetas"));
    m.def(
        "l2_analytic_inclination",
        [](const RealVec& thetas) {
            return analytic_inclination(config_from(thetas));
        },
        py::arg("thetas"));
    m.def(
        "l2_analytic_decompose",
        [](const RealVec& thetas, const ColVec& u) {
            L2ModelConfig cfg = config_from(thetas);
            auto [v, w] = analytic_decompose(
                cfg, Vector{make_euclidean(2 * cfg.n_pairs), u});
            return py::make_tuple(ColVec(v.coeffs), ColVec(w.coeffs));
        },
        py::arg("thetas"), py::arg("u"));
    m.def(
        "l2_analytic_extend",
        [](const RealVec& thetas, const RealVec& a) -> ColVec {
            return analytic_extend(config_from(thetas), a).coeffs;
        },
        py::arg("thetas"), py::arg("a"));
    m.def(
        "l2_probe_one_over_n",
        [](Eigen::Index pairs, int steps, double tol) {
            SubspaceFamily family = [pairs](int step) {
                L2Model model =
                    build_l2(one_over_n_config(pairs << (step - 1)));
                return std::make_pair(model.l, model.m);
            };
            ProbeTable table = degeneracy_probe(family, steps, tol);
            py::list rows;
            for (const ProbeRow& r : table.rows) {
                py::dict row;
                row["t"] = r.t;
                row["c"] = r.c;
                row["bound"] = r.bound;
                row["attained_norm"] = r.attained_norm;
                row["pair_gap"] = r.pair_gap;
                rows.append(row);
            }
            return rows;
        },
        py::arg("pairs"), py::arg("steps"),
        py::arg("tol") = kDefaultIntersectTol);

    py::class_<CavityModel>(m, "CavityModel")
        .def_property_readonly(
            "ambient_dim",
            [](const CavityModel& mod) { return mod.ambient->dim(); })
        .def_property_readonly(
            "space", [](const CavityModel& mod) { return PySpace{mod.ambient}; })
        .def_readonly("c", &CavityModel::c)
        .def_readonly("l_sub", &CavityModel::l_sub)
        .def_readonly("m_sub", &CavityModel::m_sub)
        .def_readonly("l_hat", &CavityModel::l_hat)
        .def_readonly("mass_gram", &CavityModel::mass_gram)
        .def_readonly("rot_gram", &CavityModel::rot_gram)
        .def_readonly("div_gram", &CavityModel::div_gram)
        .def_readonly("grad_gram", &CavityModel::grad_gram)
        .def("contraction_slack",
             [](const CavityModel& mod, const RealVec& coords) {
                 return contraction_check_coords(mod, coords);
             })
        .def("korn",
             [](const CavityModel& mod) {
                 KornResult k = korn_measure(mod);
                 py::dict out;
                 out["kappa"] = k.kappa;
                 out["bound"] = k.bound;
                 out["margin"] = k.margin;
                 out["argmax_coords"] = RealVec(k.argmax_coords);
                 return out;
             })
        .def("rayleigh_kappa",
             [](const CavityModel& mod, int restarts, std::uint64_t seed) {
                 return rayleigh_kappa(mod, restarts, seed);
             },
             py::arg("restarts") = 20, py::arg("seed") = 0x6b6f726e);

    m.def(
        "build_cavity",
        [](int d, int n_modes, int threads) {
            return build_cavity(CavityConfig{d, n_modes, 0}, threads);
        },
        py::arg("d"), py::arg("n_modes"), py::arg("threads") = 1);
}
