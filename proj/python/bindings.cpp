// Python bindings for the difference-free-set toolkit.  The module mirrors
// the C++ surface: set parsing, the exact solver and its cascade sweep,
// closed forms, greedy constructions, and modular densities.  Strings are
// accepted anywhere a set is expected ("squares+2", "primes-1", "list:1,4").

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <vector>

#include "fordiff/cascade.hpp"
#include "fordiff/clique.hpp"
#include "fordiff/formulas.hpp"
#include "fordiff/modular.hpp"
#include "fordiff/sets.hpp"

namespace py = pybind11;
using namespace fordiff;

namespace {

SearchOptions make_options(int threads, std::uint64_t max_nodes, double max_seconds) {
  SearchOptions o;
  o.threads = threads;
  o.budget.max_nodes = max_nodes;
  o.budget.max_seconds = max_seconds;
  return o;
}

std::string kind_name(FormulaKind k) {
  return k == FormulaKind::Exact ? "exact" : "lower_bound";
}

}  // namespace

PYBIND11_MODULE(_fordiff, m) {
  m.doc() =
      "Largest subsets of [1, n] whose pairwise differences avoid a forbidden "
      "set, via exact maximum-clique search";

  py::class_<ForbiddenSet>(m, "ForbiddenSet")
      .def(py::init(&parse_set_spec), py::arg("spec"),
           "Build a set from its description, e.g. 'squares', 'primes-1', "
           "'powers:3', 'polyz:1,0,2', 'list:1,4,9'")
      .def_static("parse", &parse_set_spec, py::arg("spec"))
      .def("contains", &ForbiddenSet::contains, py::arg("value"))
      .def("elements_in_range", &ForbiddenSet::elements_in_range, py::arg("lo"), py::arg("hi"))
      .def("residues_mod", &ForbiddenSet::residues_mod, py::arg("m"))
      .def_property_readonly("spec", &ForbiddenSet::spec)
      .def("__repr__",
           [](const ForbiddenSet& x) { return "ForbiddenSet('" + x.spec() + "')"; });
  py::implicitly_convertible<py::str, ForbiddenSet>();

  py::class_<DValue>(m, "DValue")
      .def_readonly("n", &DValue::n)
      .def_readonly("d", &DValue::d)
      .def_readonly("witness", &DValue::witness)
      .def_readonly("nodes_expanded", &DValue::nodes_expanded)
      .def_readonly("seconds", &DValue::seconds)
      .def("__repr__", [](const DValue& v) {
        std::ostringstream os;
        os << "DValue(n=" << v.n << ", d=" << v.d << ")";
        return os.str();
      });

  py::class_<CascadeRecord>(m, "CascadeRecord")
      .def_readonly("set_spec", &CascadeRecord::set_spec)
      .def_readonly("n_lo", &CascadeRecord::n_lo)
      .def_readonly("n_hi", &CascadeRecord::n_hi)
      .def_readonly("d", &CascadeRecord::d)
      .def_readonly("witness", &CascadeRecord::witness)
      .def("__repr__", [](const CascadeRecord& r) {
        std::ostringstream os;
        os << "CascadeRecord([" << r.n_lo << ", " << r.n_hi << "] -> " << r.d << ")";
        return os.str();
      });

  py::class_<CascadeResult>(m, "CascadeResult")
      .def_readonly("records", &CascadeResult::records)
      .def_readonly("solves", &CascadeResult::solves)
      .def_readonly("nodes_expanded", &CascadeResult::nodes_expanded)
      .def_readonly("seconds", &CascadeResult::seconds);

  py::class_<Ratio>(m, "Ratio")
      .def_readonly("num", &Ratio::num)
      .def_readonly("den", &Ratio::den)
      .def("__str__", &Ratio::str)
      .def("__repr__", [](const Ratio& r) { return "Ratio(" + r.str() + ")"; })
      .def("__eq__", [](const Ratio& a, const Ratio& b) { return a == b; })
      .def("__lt__", [](const Ratio& a, const Ratio& b) { return a < b; })
      .def("__float__",
           [](const Ratio& r) { return static_cast<double>(r.num) / static_cast<double>(r.den); });

  py::class_<DensityRecord>(m, "DensityRecord")
      .def_readonly("m", &DensityRecord::m)
      .def_readonly("residues", &DensityRecord::residues)
      .def_readonly("d", &DensityRecord::d)
      .def_readonly("witness", &DensityRecord::witness)
      .def_readonly("ratio", &DensityRecord::ratio)
      .def("__repr__", [](const DensityRecord& r) {
        std::ostringstream os;
        os << "DensityRecord(m=" << r.m << ", d=" << r.d << ", ratio=" << r.ratio.str() << ")";
        return os.str();
      });

  py::class_<FormulaResult>(m, "FormulaResult")
      .def_readonly("n", &FormulaResult::n)
      .def_readonly("value", &FormulaResult::value)
      .def_property_readonly("kind",
                             [](const FormulaResult& r) { return kind_name(r.kind); })
      .def_readonly("witness", &FormulaResult::witness)
      .def("__repr__", [](const FormulaResult& r) {
        std::ostringstream os;
        os << "FormulaResult(n=" << r.n << ", value=" << r.value << ", kind='"
           << kind_name(r.kind) << "')";
        return os.str();
      });

  py::class_<VerifyRow>(m, "VerifyRow")
      .def_readonly("n", &VerifyRow::n)
      .def_readonly("formula_value", &VerifyRow::formula_value)
      .def_readonly("computed_d", &VerifyRow::computed_d)
      .def_property_readonly("status",
                             [](const VerifyRow& r) { return std::string(to_string(r.status)); })
      .def("__repr__", [](const VerifyRow& r) {
        std::ostringstream os;
        os << "VerifyRow(n=" << r.n << ", formula=" << r.formula_value
           << ", computed=" << r.computed_d << ", status='" << to_string(r.status) << "')";
        return os.str();
      });

  py::register_exception<BudgetExhausted>(m, "BudgetExhausted");
  py::register_exception<CascadeInterrupted>(m, "CascadeInterrupted");

  m.def(
      "compute_d",
      [](const ForbiddenSet& x, std::int64_t n, int threads, std::uint64_t max_nodes,
         double max_seconds) { return compute_d(x, n, make_options(threads, max_nodes, max_seconds)); },
      py::arg("x"), py::arg("n"), py::kw_only(), py::arg("threads") = 1,
      py::arg("max_nodes") = std::uint64_t{0}, py::arg("max_seconds") = 0.0,
      "Exact size of the largest difference-avoiding subset of [1, n], with witness");

  m.def("compute_d_oracle", &compute_d_oracle, py::arg("x"), py::arg("n"),
        "Reference value by exhaustive enumeration (small n only)");

  m.def(
      "cascade",
      [](const ForbiddenSet& x, std::int64_t n_min, std::int64_t n_max, int threads,
         std::uint64_t max_nodes, double max_seconds, const std::string& log_path,
         bool resume) {
        return cascade(x, n_min, n_max, make_options(threads, max_nodes, max_seconds),
                       log_path, resume);
      },
      py::arg("x"), py::arg("n_min"), py::arg("n_max"), py::kw_only(),
      py::arg("threads") = 1, py::arg("max_nodes") = std::uint64_t{0},
      py::arg("max_seconds") = 0.0, py::arg("log_path") = std::string(),
      py::arg("resume") = false,
      "All values on [n_min, n_max] as maximal constant rows, reusing each "
      "witness to seed the next instance");

  m.def(
      "local_density",
      [](const ForbiddenSet& x, std::int64_t m, std::int64_t cap) {
        return local_density(x, m, {}, cap);
      },
      py::arg("x"), py::arg("m"), py::kw_only(), py::arg("cap") = kDefaultDensityCap,
      "Largest subset of Z/m whose differences avoid the residues of x");

  m.def(
      "scan_densities",
      [](const ForbiddenSet& x, std::int64_t max_m, std::int64_t cap) {
        return scan_densities(x, max_m, {}, cap);
      },
      py::arg("x"), py::arg("max_m"), py::kw_only(), py::arg("cap") = kDefaultDensityCap);

  m.def(
      "mu_lower_scan",
      [](const ForbiddenSet& x, std::int64_t max_m, std::int64_t cap) {
        return mu_lower_scan(x, max_m, {}, cap);
      },
      py::arg("x"), py::arg("max_m"), py::kw_only(), py::arg("cap") = kDefaultDensityCap,
      "Best density ratio d/m over moduli 1..max_m (ties to the smaller m)");

  m.def(
      "locally_intersective_up_to",
      [](const ForbiddenSet& x, std::int64_t max_m) {
        auto rep = locally_intersective_up_to(x, max_m);
        return py::make_tuple(rep.intersective, rep.first_failing_m);
      },
      py::arg("x"), py::arg("max_m"),
      "(hits_every_modulus, least_missed_modulus) for moduli 1..max_m");

  m.def("lift_density_witness", &lift_density_witness, py::arg("record"), py::arg("k"),
        "Blow a modular witness up to k periods inside [1, k*m]");

  m.def("primes_formula", &primes_formula, py::arg("n"));
  m.def("squares_plus_one_formula", &squares_plus_one_formula, py::arg("n"));
  m.def("squares_plus_two_lower_bound", &squares_plus_two_lower_bound, py::arg("n"));

  m.def("greedy_construct", &greedy_construct, py::arg("x"), py::arg("n"),
        "First-fit difference-avoiding subset of [1, n]");

  m.def("find_m_star", &find_m_star, py::arg("x"), py::arg("max_m"),
        "Least modulus <= max_m avoided by every element of x, or None");

  m.def(
      "difference_free",
      [](const ForbiddenSet& x, const std::vector<std::int64_t>& values) {
        return difference_free(x, values);
      },
      py::arg("x"), py::arg("values"),
      "True when no two distinct values differ by an element of x");

  m.def(
      "verify_formula",
      [](const std::string& name, std::int64_t n_min, std::int64_t n_max) {
        return verify_formula(name, n_min, n_max);
      },
      py::arg("name"), py::arg("n_min"), py::arg("n_max"),
      "Grade 'primes', 'squares+1' or 'squares+2-lb' against the solver");
}
