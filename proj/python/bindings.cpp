#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multiproj/bench.hpp"
#include "multiproj/bilevel.hpp"
#include "multiproj/euclidean.hpp"
#include "multiproj/multilevel.hpp"
#include "multiproj/rng.hpp"
#include "multiproj/vector_balls.hpp"

namespace py = pybind11;
using namespace multiproj;

namespace {

DenseTensor tensor_from_array(const py::array_t<double, py::array::c_style |
                                                            py::array::forcecast>& a) {
  std::vector<std::size_t> shape(a.ndim());
  for (py::ssize_t i = 0; i < a.ndim(); ++i)
    shape[static_cast<std::size_t>(i)] = static_cast<std::size_t>(a.shape(i));
  const double* ptr = a.data();
  return DenseTensor(std::move(shape),
                     std::vector<double>(ptr, ptr + a.size()));
}

py::array_t<double> array_from_tensor(const DenseTensor& t) {
  std::vector<py::ssize_t> shape(t.shape().begin(), t.shape().end());
  py::array_t<double> out(shape);
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

Norm norm_from_string(const std::string& s) {
  NormSpec spec = parse_norm_spec(s);
  if (spec.depth() != 1)
    throw ConfigError("expected a single norm tag, got '" + s + "'");
  return spec.levels[0];
}

}  // namespace

PYBIND11_MODULE(_multiproj, m) {
  m.doc() = "Bi-level / multi-level norm-ball projections";

  py::register_exception<ValueError>(m, "ValueError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  m.def("project_l1",
        [](py::array_t<double> y, double radius) {
          auto v = tensor_from_array(y);
          return py::array_t<double>(
              py::cast(project_l1_fast(v.data(), radius)));
        },
        py::arg("y"), py::arg("radius"));
  m.def("project_l2",
        [](py::array_t<double> y, double radius) {
          auto v = tensor_from_array(y);
          return py::array_t<double>(py::cast(project_l2(v.data(), radius)));
        },
        py::arg("y"), py::arg("radius"));
  m.def("project_linf",
        [](py::array_t<double> y, double radius) {
          auto v = tensor_from_array(y);
          return py::array_t<double>(py::cast(project_linf(v.data(), radius)));
        },
        py::arg("y"), py::arg("radius"));

  m.def("bilevel_project",
        [](py::array_t<double> y, double eta, const std::string& p,
           const std::string& q, unsigned workers) {
          DenseTensor t = tensor_from_array(y);
          std::unique_ptr<ThreadPool> pool;
          if (workers > 1) pool = std::make_unique<ThreadPool>(workers);
          BilevelResult r = bilevel_project(t, norm_from_string(p),
                                            norm_from_string(q), eta,
                                            pool.get());
          return py::make_tuple(array_from_tensor(r.X), py::cast(r.budgets),
                                r.zero_columns);
        },
        py::arg("y"), py::arg("eta"), py::arg("p") = "1",
        py::arg("q") = "inf", py::arg("workers") = 1,
        "Bi-level l_{p,q} projection; returns (X, budgets, zero_columns).");

  m.def("multilevel_project",
        [](py::array_t<double> y, const std::string& norms, double eta,
           unsigned workers) {
          DenseTensor t = tensor_from_array(y);
          std::unique_ptr<ThreadPool> pool;
          if (workers > 1) pool = std::make_unique<ThreadPool>(workers);
          return array_from_tensor(multilevel_project_iter(
                                       t, parse_norm_spec(norms), eta,
                                       pool.get())
                                       .X);
        },
        py::arg("y"), py::arg("norms"), py::arg("eta"), py::arg("workers") = 1,
        "Multi-level projection; norms are innermost first, e.g. 'inf,inf,1'.");

  m.def("euclid_project_l1inf",
        [](py::array_t<double> y, double eta) {
          EuclidResult r = euclid_project_l1inf(tensor_from_array(y), eta);
          return py::make_tuple(array_from_tensor(r.X),
                                py::cast(r.sol.budgets), r.sol.theta);
        },
        py::arg("y"), py::arg("eta"),
        "Exact Euclidean l_{1,inf} projection; returns (X, budgets, theta).");

  m.def("matrix_pq_norm",
        [](py::array_t<double> y, const std::string& p, const std::string& q) {
          return matrix_pq_norm(tensor_from_array(y), norm_from_string(p),
                                norm_from_string(q));
        },
        py::arg("y"), py::arg("p"), py::arg("q"));

  m.def("multilevel_norm",
        [](py::array_t<double> y, const std::string& norms) {
          return multilevel_norm(tensor_from_array(y), parse_norm_spec(norms));
        },
        py::arg("y"), py::arg("norms"));

  m.def("structured_sparsity",
        [](py::array_t<double> y, double tol) {
          SparsityCount c = structured_sparsity(tensor_from_array(y), tol);
          return py::make_tuple(c.zero_columns, c.fraction);
        },
        py::arg("y"), py::arg("tol") = 0.0);

  m.def("gen_uniform_matrix",
        [](std::size_t n, std::size_t m, std::uint64_t seed, double lo,
           double hi) {
          return array_from_tensor(gen_uniform_matrix(n, m, seed, lo, hi));
        },
        py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("lo") = 0.0,
        py::arg("hi") = 1.0);
}
