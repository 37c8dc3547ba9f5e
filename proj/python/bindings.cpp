#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "expsubdiv/acceptance.hpp"
#include "expsubdiv/analysis.hpp"
#include "expsubdiv/serialize.hpp"
#include "expsubdiv/shapes.hpp"
#include "expsubdiv/subdivision.hpp"

namespace py = pybind11;
using namespace expsubdiv;

namespace {

ExponentialSpace space_from_pairs(const std::vector<std::pair<cplx, int>>& pairs) {
  std::vector<Frequency> freqs;
  for (const auto& [theta, tau] : pairs) freqs.push_back({theta, tau});
  return ExponentialSpace(std::move(freqs));
}

std::vector<std::pair<cplx, int>> space_to_pairs(const ExponentialSpace& s) {
  std::vector<std::pair<cplx, int>> out;
  for (const auto& f : s.freqs()) out.emplace_back(f.theta, f.tau);
  return out;
}

py::array_t<double> points_array(const RefinedData& d) {
  py::array_t<double> a({static_cast<py::ssize_t>(d.size()), static_cast<py::ssize_t>(d.dim())});
  std::copy(d.coords().begin(), d.coords().end(), a.mutable_data());
  return a;
}

py::dict level_dict(const RefinedData& d) {
  py::array_t<long> idx(static_cast<py::ssize_t>(d.size()));
  py::array_t<double> t(static_cast<py::ssize_t>(d.size()));
  for (std::size_t m = 0; m < d.size(); ++m) {
    idx.mutable_at(m) = d.index(m);
    t.mutable_at(m) = d.parameter(m);
  }
  py::dict out;
  out["level"] = d.level();
  out["index"] = idx;
  out["t"] = t;
  out["points"] = points_array(d);
  return out;
}

RefinedData data_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& pts, long offset,
                            double p, Topology topology) {
  if (pts.ndim() != 1 && pts.ndim() != 2) throw std::invalid_argument("points must be a 1-D or 2-D array");
  const int dim = pts.ndim() == 1 ? 1 : static_cast<int>(pts.shape(1));
  std::vector<double> coords(pts.data(), pts.data() + pts.size());
  return {0, offset, dim, std::move(coords), p, topology};
}

const Shape& shape_by_name(const std::string& name) {
  const auto kind = parse_shape_name(name);
  if (!kind) throw std::invalid_argument("unknown shape " + name);
  return shape(*kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-stationary exponential subdivision schemes";

  py::class_<LaurentPolynomial>(m, "LaurentPolynomial")
      .def(py::init<>())
      .def(py::init<int, std::vector<cplx>>(), py::arg("lo"), py::arg("coeffs"))
      .def_property_readonly("lo", &LaurentPolynomial::lo)
      .def_property_readonly("hi", &LaurentPolynomial::hi)
      .def_property_readonly("coeffs", [](const LaurentPolynomial& p) {
        return std::vector<cplx>(p.coeffs().begin(), p.coeffs().end());
      })
      .def("__len__", &LaurentPolynomial::width)
      .def("__getitem__", &LaurentPolynomial::operator[])
      .def("__call__", [](const LaurentPolynomial& p, cplx z) { return eval(p, z); })
      .def("derivative", [](const LaurentPolynomial& p, int r) { return derivative(p, r); }, py::arg("r") = 1)
      .def("max_abs_coeff", &LaurentPolynomial::max_abs_coeff)
      .def("is_real", &LaurentPolynomial::is_real, py::arg("rel_tol") = 1e-12)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const LaurentPolynomial& p) { return "LaurentPolynomial(" + json(p).dump() + ")"; });

  m.def("divide_with_remainder", [](const LaurentPolynomial& p, const LaurentPolynomial& d) {
    auto r = divide_with_remainder(p, d);
    return py::make_tuple(r.quotient, r.remainder);
  });
  m.def("max_coeff_distance", &max_coeff_distance);

  py::class_<ExponentialSpace>(m, "ExponentialSpace")
      .def(py::init(&space_from_pairs), py::arg("freqs"))
      .def_property_readonly("freqs", &space_to_pairs)
      .def_property_readonly("order", &ExponentialSpace::order)
      .def("__len__", &ExponentialSpace::size)
      .def("__repr__", [](const ExponentialSpace& s) { return "ExponentialSpace(" + json(s).dump() + ")"; });
  m.def("mixed_exponential_space", &mixed_exponential_space, py::arg("t"), py::arg("n"));
  m.def("multi_frequency_space", &multi_frequency_space, py::arg("t"), py::arg("n"));
  m.def("spiral_space", &spiral_space, py::arg("t"), py::arg("n"));

  py::enum_<SchemeKind>(m, "SchemeKind")
      .value("a1", SchemeKind::a1)
      .value("a2", SchemeKind::a2)
      .value("a3", SchemeKind::a3)
      .value("a4", SchemeKind::a4)
      .value("exp_bspline", SchemeKind::exp_bspline)
      .value("stationary", SchemeKind::stationary);

  py::enum_<Topology>(m, "Topology").value("open", Topology::open).value("closed", Topology::closed);

  m.def("level_parameter", &level_parameter, py::arg("v_init"), py::arg("k"));
  m.def("frequency_from_v_init", &frequency_from_v_init);
  m.def("a2_alpha", &a2_alpha, py::arg("v"), py::arg("polynomial_limit") = kAlphaPolynomialLimit);
  m.def("exp_bspline_symbol", &exp_bspline_symbol, py::arg("space"), py::arg("k"));
  m.def("stationary_limit_symbol", py::overload_cast<std::string_view>(&stationary_limit_symbol));

  py::class_<SymbolFamily>(m, "SymbolFamily")
      .def_static("nonstationary",
                  [](const std::string& name, double v_init) {
                    const auto kind = parse_scheme_name(name);
                    if (!kind) throw std::invalid_argument("unknown scheme " + name);
                    return SymbolFamily::nonstationary(*kind, v_init);
                  },
                  py::arg("scheme"), py::arg("v_init"))
      .def_static("exp_bspline", &SymbolFamily::exp_bspline, py::arg("space"))
      .def_static("stationary", &SymbolFamily::stationary, py::arg("name"), py::arg("mask"), py::arg("space"),
                  py::arg("declared_p") = std::nullopt)
      .def("symbol_at", &SymbolFamily::symbol_at, py::arg("k"))
      .def("v_at", &SymbolFamily::v_at, py::arg("k"))
      .def("shifted", &SymbolFamily::shifted, py::arg("n"))
      .def("with_alpha_limit", &SymbolFamily::with_alpha_limit)
      .def_property_readonly("name", &SymbolFamily::name)
      .def_property_readonly("kind", &SymbolFamily::kind)
      .def_property_readonly("space", &SymbolFamily::space)
      .def_property_readonly("v_init", &SymbolFamily::v_init)
      .def_property_readonly("declared_p", &SymbolFamily::declared_p);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_property_readonly("passed", &ConditionReport::passed)
      .def_property_readonly("verdict", [](const ConditionReport& r) { return std::string(to_string(r.verdict)); })
      .def_readonly("max_residual", &ConditionReport::max_residual)
      .def_readonly("p", &ConditionReport::p)
      .def_readonly("diagnostic", &ConditionReport::diagnostic)
      .def("to_json", [](const ConditionReport& r) { return json(r).dump(); });

  m.def("check_generation", &check_generation, py::arg("family"), py::arg("space"), py::arg("k_max") = 8,
        py::arg("tol") = kDefaultTolerance);
  m.def("check_reproduction", &check_reproduction, py::arg("family"), py::arg("space"), py::arg("p"),
        py::arg("k_max") = 8, py::arg("tol") = kDefaultTolerance);
  m.def("solve_parametrization",
        [](const SymbolFamily& f, const ExponentialSpace& s, int k, double tol) {
          auto r = solve_parametrization(f, s, k, tol);
          return py::make_tuple(r.p, r.diagnostic);
        },
        py::arg("family"), py::arg("space"), py::arg("k") = 8, py::arg("tol") = kDefaultTolerance);
  m.def("classify_symmetry", [](const LaurentPolynomial& mask, double tol) {
    return std::string(to_string(classify_symmetry(mask, tol)));
  }, py::arg("mask"), py::arg("tol") = kDefaultTolerance);
  m.def("is_interpolatory", &is_interpolatory, py::arg("mask"), py::arg("tol") = kDefaultTolerance);

  m.def("refine",
        [](const SymbolFamily& family, const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
           int levels, double p, Topology topology, long offset) {
          const auto out = refine_levels(family, data_from_array(points, offset, p, topology), levels);
          py::list result;
          for (const auto& d : out) result.append(level_dict(d));
          return result;
        },
        py::arg("family"), py::arg("points"), py::arg("levels"), py::arg("p") = 0.0,
        py::arg("topology") = Topology::open, py::arg("offset") = 0);

  m.def("shape_names", [] {
    std::vector<std::string> names;
    for (auto k : all_shapes()) names.emplace_back(shape(k).name);
    return names;
  });
  m.def("sample_shape",
        [](const std::string& name, std::optional<int> samples, std::optional<double> spacing, double p) {
          const Shape& s = shape_by_name(name);
          return level_dict(sample_shape(s, samples.value_or(s.default_samples),
                                         spacing.value_or(s.default_spacing), p));
        },
        py::arg("name"), py::arg("samples") = std::nullopt, py::arg("spacing") = std::nullopt, py::arg("p") = 0.0);
  m.def("shape_v_init", [](const std::string& name, std::optional<double> spacing) {
    const Shape& s = shape_by_name(name);
    return default_v_init(s, spacing.value_or(s.default_spacing));
  }, py::arg("name"), py::arg("spacing") = std::nullopt);
  m.def("refine_shape",
        [](const std::string& name, const SymbolFamily& family, int levels, std::optional<int> samples,
           std::optional<double> spacing) {
          const Shape& s = shape_by_name(name);
          const double sigma = spacing.value_or(s.default_spacing);
          const auto out = refine_levels(
              family, sample_shape(s, samples.value_or(s.default_samples), sigma, family.declared_p().value_or(0.0)),
              levels);
          return py::make_tuple(points_array(out.back()), reference_distance(s, out.back(), sigma));
        },
        py::arg("name"), py::arg("family"), py::arg("levels"), py::arg("samples") = std::nullopt,
        py::arg("spacing") = std::nullopt);

  m.def("selftest", [](int k_max) {
    SelftestOptions o;
    o.k_max = k_max;
    auto results = run_invariants(o);
    const auto acceptance = run_acceptance(o);
    results.insert(results.end(), acceptance.begin(), acceptance.end());
    py::list out;
    for (const auto& r : results) out.append(py::make_tuple(r.id, r.passed, r.detail));
    return out;
  }, py::arg("k_max") = 8);
}
