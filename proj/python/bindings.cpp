#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "flowlat/counting.hpp"
#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"
#include "flowlat/invariants.hpp"
#include "flowlat/normality.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py_int(const flowlat::BigInt& value) {
  return py::cast<py::int_>(py::module_::import("builtins").attr("int")(value.str()));
}

flowlat::Tree tree_of(const std::string& source) { return flowlat::tree_from_source(source); }
flowlat::Group group_of(const std::string& spec) { return flowlat::parse_group(spec); }

}  // namespace

PYBIND11_MODULE(_flowlat, m) {
  m.doc() = "lattice polytopes of group-based models on trees";
  m.attr("__version__") = flowlat::kVersion;

  py::register_exception<flowlat::input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<flowlat::guard_error>(m, "GuardError", PyExc_RuntimeError);

  m.def(
      "vertices",
      [](const std::string& tree, const std::string& group) {
        const auto vm = flowlat::vertex_matrix(tree_of(tree), group_of(group));
        std::vector<std::vector<int>> columns(vm.cols, std::vector<int>(vm.rows));
        for (int c = 0; c < vm.cols; ++c) {
          for (int r = 0; r < vm.rows; ++r) columns[c][r] = vm.at(r, c);
        }
        return columns;
      },
      py::arg("tree"), py::arg("group"),
      "Polytope vertices as 0/1 columns, edge-major coordinate order.");

  m.def(
      "flows",
      [](const std::string& tree, const std::string& group) {
        std::vector<std::vector<int>> out;
        for (const auto& f : flowlat::enumerate_flows(tree_of(tree), group_of(group))) {
          out.push_back(f.values);
        }
        return out;
      },
      py::arg("tree"), py::arg("group"),
      "All flows as per-edge element indices, in enumeration order.");

  m.def(
      "count",
      [](const std::string& tree, const std::string& group, int dilation, const std::string& kind,
         const std::string& method, int threads) {
        const auto t = tree_of(tree);
        const auto g = group_of(group);
        flowlat::BigInt result;
        if (kind == "ehrhart") {
          result = method == "direct" ? flowlat::ehrhart_count(t, g, dilation)
                                      : flowlat::ehrhart_via_fibers(t, g, dilation, threads);
        } else if (kind == "hilbert") {
          result = method == "direct" ? flowlat::hilbert_count(t, g, dilation)
                                      : flowlat::hilbert_via_fibers(t, g, dilation, threads);
        } else {
          throw flowlat::input_error("kind must be 'ehrhart' or 'hilbert'");
        }
        return to_py_int(result);
      },
      py::arg("tree"), py::arg("group"), py::arg("dilation"), py::arg("kind") = "ehrhart",
      py::arg("method") = "fiber", py::arg("threads") = 1,
      "Exact lattice-point or graded-semigroup count of the n-th dilation.");

  m.def(
      "fiber_f",
      [](const std::string& group, const std::vector<int>& a) {
        return to_py_int(flowlat::tripod_fiber_f(group_of(group), a));
      },
      py::arg("group"), py::arg("a"));

  m.def(
      "fiber_g",
      [](const std::string& group, const std::vector<int>& a, const std::vector<int>& b) {
        return to_py_int(flowlat::tripod_fiber_g(group_of(group), a, b));
      },
      py::arg("group"), py::arg("a"), py::arg("b"));

  m.def(
      "normality",
      [](const std::string& tree, const std::string& group, int max_n) {
        const auto report = flowlat::normality_check(tree_of(tree), group_of(group), max_n);
        py::dict d;
        d["normal"] = report.normal;
        d["bound"] = report.bound;
        if (report.witness) {
          py::dict w;
          w["dilation"] = report.witness->dilation;
          w["point"] = report.witness->point;
          d["witness"] = w;
        }
        return d;
      },
      py::arg("tree"), py::arg("group"), py::arg("max_n") = 3);

  m.def(
      "very_ample",
      [](const std::string& tree, const std::string& group, int max_deg) {
        const auto report = flowlat::very_ample_check(tree_of(tree), group_of(group), max_deg);
        py::dict d;
        d["bound"] = report.bound;
        d["witness_found"] = report.witness.has_value();
        if (report.witness) {
          py::dict w;
          w["vertex"] = report.witness->vertex;
          w["dilation"] = report.witness->dilation;
          w["point"] = report.witness->point;
          d["witness"] = w;
        }
        return d;
      },
      py::arg("tree"), py::arg("group"), py::arg("max_deg") = 3);

  m.def(
      "intersect",
      [](int claw, const std::string& group, int first, bool pairs_only) {
        const auto report = flowlat::intersect_claw(claw, group_of(group), first, pairs_only);
        py::dict d;
        d["claw"] = report.claw_size;
        d["sockets"] = report.sockets;
        d["claw_rank"] = report.claw_rank;
        d["kernel_sum_dimension"] = report.kernel_sum_dimension;
        d["torus_dimension"] = report.torus_dimension;
        d["prolongations_used"] = report.prolongations_used;
        d["equals_claw"] = report.equals_claw;
        return d;
      },
      py::arg("claw"), py::arg("group"), py::arg("first") = 0, py::arg("pairs_only") = false);

  m.def(
      "jc_quadric_cover",
      [](int claw) {
        const auto report = flowlat::jc_quadric_cover(claw);
        py::dict d;
        d["claw"] = report.claw_size;
        d["binomials"] = report.binomial_count;
        d["all_covered"] = report.all_covered;
        d["three_splits_sufficient"] = report.three_splits_sufficient;
        return d;
      },
      py::arg("claw"));

  m.def(
      "newick",
      [](const std::string& tree) { return tree_of(tree).to_newick(); },
      py::arg("tree"), "Canonical serialization of a tree source.");
}
