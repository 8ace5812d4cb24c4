#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kyp/contraction.hpp"
#include "kyp/errors.hpp"
#include "kyp/fixtures.hpp"
#include "kyp/inequality.hpp"
#include "kyp/io.hpp"
#include "kyp/moebius.hpp"
#include "kyp/numerics.hpp"
#include "kyp/shorted.hpp"
#include "kyp/solver.hpp"
#include "kyp/system.hpp"

namespace py = pybind11;

namespace kyp {
namespace {

// Reports cross the boundary as plain dicts with the same keys as the CLI
// output.
py::object ToPython(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Tolerances MakeTolerances(double psd_tol, double rank_tol, double fixpoint_tol,
                          int max_iter) {
  Tolerances tol;
  tol.psd_tol = psd_tol;
  tol.rank_tol = rank_tol;
  tol.fixpoint_tol = fixpoint_tol;
  tol.max_iter = max_iter;
  tol.validate();
  return tol;
}

}  // namespace
}  // namespace kyp

PYBIND11_MODULE(_kyp, m) {
  using namespace kyp;
  using py::arg;
  m.doc() = "Passive discrete-time systems and the KYP inequality.";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<NotPsdError>(m, "NotPsdError", PyExc_ValueError);
  py::register_exception<NotContractiveError>(m, "NotContractiveError",
                                              PyExc_ValueError);
  py::register_exception<SingularError>(m, "SingularError", PyExc_ArithmeticError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError",
                                           PyExc_RuntimeError);
  py::register_exception<io::InputError>(m, "InputError", PyExc_ValueError);

  const Tolerances defaults;
  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init(&MakeTolerances), arg("psd_tol") = defaults.psd_tol,
           arg("rank_tol") = defaults.rank_tol,
           arg("fixpoint_tol") = defaults.fixpoint_tol,
           arg("max_iter") = defaults.max_iter)
      .def_readwrite("psd_tol", &Tolerances::psd_tol)
      .def_readwrite("rank_tol", &Tolerances::rank_tol)
      .def_readwrite("fixpoint_tol", &Tolerances::fixpoint_tol)
      .def_readwrite("max_iter", &Tolerances::max_iter)
      .def("__repr__", [](const Tolerances& t) {
        return "Tolerances(psd_tol=" + format_number(t.psd_tol) +
               ", rank_tol=" + format_number(t.rank_tol) +
               ", fixpoint_tol=" + format_number(t.fixpoint_tol) +
               ", max_iter=" + std::to_string(t.max_iter) + ")";
      });

  py::class_<BlockContraction>(m, "BlockContraction")
      .def(py::init<CMatrix, CMatrix, CMatrix, CMatrix>(), arg("A"), arg("B"),
           arg("C"), arg("D"))
      .def_static("from_full", &BlockContraction::FromFull, arg("T"),
                  arg("dim_k"), arg("dim_h"))
      .def_property_readonly("A", &BlockContraction::A)
      .def_property_readonly("B", &BlockContraction::B)
      .def_property_readonly("C", &BlockContraction::C)
      .def_property_readonly("D", &BlockContraction::D)
      .def("full", &BlockContraction::full)
      .def("norm", &BlockContraction::norm);

  py::class_<SystemRealization>(m, "System")
      .def(py::init([](const CMatrix& a, const CMatrix& b, const CMatrix& c,
                       const CMatrix& d, const std::string& label) {
             return SystemRealization(BlockContraction(a, b, c, d), label);
           }),
           arg("A"), arg("B"), arg("C"), arg("D"), arg("label") = "")
      .def_property_readonly("A", &SystemRealization::A)
      .def_property_readonly("B", &SystemRealization::B)
      .def_property_readonly("C", &SystemRealization::C)
      .def_property_readonly("D", &SystemRealization::D)
      .def_property_readonly("state_dim", &SystemRealization::state_dim)
      .def_property_readonly("input_dim", &SystemRealization::input_dim)
      .def_property_readonly("output_dim", &SystemRealization::output_dim)
      .def_property_readonly("label", &SystemRealization::label)
      .def("full", [](const SystemRealization& s) { return s.T().full(); })
      .def("to_dict",
           [](const SystemRealization& s) { return ToPython(io::system_to_json(s)); })
      .def("__repr__", [](const SystemRealization& s) {
        return "System(state_dim=" + std::to_string(s.state_dim()) +
               ", input_dim=" + std::to_string(s.input_dim()) +
               ", output_dim=" + std::to_string(s.output_dim()) + ")";
      });

  py::class_<ContractionParams>(m, "ContractionParams")
      .def_readonly("D", &ContractionParams::D)
      .def_readonly("F", &ContractionParams::F)
      .def_readonly("G", &ContractionParams::G)
      .def_readonly("L", &ContractionParams::L)
      .def_readonly("basis_D", &ContractionParams::basis_D)
      .def_readonly("basis_D_star", &ContractionParams::basis_D_star)
      .def_readonly("basis_G", &ContractionParams::basis_G)
      .def_readonly("basis_F_star", &ContractionParams::basis_F_star);

  py::class_<IterationTrace>(m, "IterationTrace")
      .def_readonly("iterates", &IterationTrace::iterates)
      .def_readonly("gaps", &IterationTrace::gaps)
      .def_readonly("final_residual", &IterationTrace::final_residual)
      .def_readonly("converged", &IterationTrace::converged)
      .def_readonly("iterations_used", &IterationTrace::iterations_used)
      .def_readonly("slow_convergence", &IterationTrace::slow_convergence)
      .def_readonly("empirical_rate", &IterationTrace::empirical_rate)
      .def_readonly("limit_error_estimate", &IterationTrace::limit_error_estimate);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("x_min", &SolveResult::x_min)
      .def_readonly("trace", &SolveResult::trace);

  // Numerics and shorted operators.
  m.def("psd_sqrt", &psd_sqrt, arg("M"), arg("tol") = defaults);
  m.def("shorted",
        [](const CMatrix& s, const CMatrix& k_basis, const Tolerances& tol) {
          return shorted(s, Subspace::span(k_basis, tol), tol).value;
        },
        arg("S"), arg("K"), arg("tol") = defaults,
        "Shorted operator of S to the span of the columns of K.");
  m.def("shorted_oracle",
        [](const CMatrix& s, const CMatrix& k_basis, const Tolerances& tol) {
          return shorted_oracle(s, Subspace::span(k_basis, tol), tol).value;
        },
        arg("S"), arg("K"), arg("tol") = defaults);

  // Contractions.
  m.def("parametrize", &parametrize, arg("T"), arg("tol") = defaults);
  m.def("synthesize", &synthesize, arg("params"), arg("tol") = defaults);
  m.def("shorted_defects",
        [](const BlockContraction& t, const Tolerances& tol) {
          return ToPython(io::shorted_defects_to_json(shorted_defects(t, tol)));
        },
        arg("T"), arg("tol") = defaults);

  // Systems.
  m.def("classify",
        [](const SystemRealization& s, const Tolerances& tol) {
          return ToPython(io::classification_to_json(classify(s, tol)));
        },
        arg("system"), arg("tol") = defaults);
  m.def("transfer", &transfer_eval, arg("system"), arg("lam"),
        arg("tol") = defaults);
  m.def("adjoint", &adjoint, arg("system"));
  m.def("parameter_system",
        [](const SystemRealization& s, const Tolerances& tol) {
          MoebiusPair pair = parameter_system(s, tol);
          return py::make_tuple(pair.theta0, pair.parameter_system);
        },
        arg("system"), arg("tol") = defaults,
        "Returns (Theta0, nu) with Theta_tau = Moebius(Theta0, Theta_nu).");
  m.def("moebius_eval", &moebius_eval, arg("theta0"), arg("Z"),
        arg("tol") = defaults);

  // Inequality forms and the minimal solution.
  m.def("kyp_matrix", &kyp_matrix, arg("system"), arg("X"));
  m.def("evaluate_forms",
        [](const SystemRealization& s, const CMatrix& x, const Tolerances& tol) {
          return ToPython(io::kyp_report_to_json(evaluate_forms(s, x, tol)));
        },
        arg("system"), arg("X"), arg("tol") = defaults);
  m.def("uniqueness_report",
        [](const SystemRealization& s, const Tolerances& tol) {
          return ToPython(io::uniqueness_to_json(uniqueness_report(s, tol)));
        },
        arg("system"), arg("tol") = defaults);
  m.def("solution_bounds",
        [](const SystemRealization& s, const Tolerances& tol) {
          return ToPython(io::bounds_to_json(solution_bounds(s, tol)));
        },
        arg("system"), arg("tol") = defaults);
  m.def("solve_min", &solve_min, arg("system"), arg("tol") = defaults);
  m.def("rescale", &rescale_realization, arg("system"), arg("X"),
        arg("tol") = defaults);

  // Fixtures and files.
  m.def("fixture",
        [](const std::string& kind, Index n_h, Index n_m, Index n_n, double alpha,
           std::uint64_t seed) {
          FixtureSpec spec;
          spec.kind = parse_fixture_kind(kind);
          spec.n_h = n_h;
          spec.n_m = n_m;
          spec.n_n = n_n;
          spec.alpha = alpha;
          spec.seed = seed;
          return build_fixture(spec);
        },
        arg("kind"), arg("n_h") = 1, arg("n_m") = -1, arg("n_n") = -1,
        arg("alpha") = 0.5, arg("seed") = 0);
  m.def("load_system", &io::load_system, arg("path"));
  m.def("save_system", &io::save_system, arg("path"), arg("system"));
}
