// Python bindings for the main operations: state constructors, tensor
// algebra, entanglement measures, channel constructions and the check
// registry.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entkit/constructions.hpp"
#include "entkit/matrix_calculus.hpp"
#include "entkit/measures.hpp"
#include "entkit/verify.hpp"

namespace py = pybind11;
using namespace entkit;

namespace {

HermitianOperator make_op(const Matrix& m, const std::vector<int>& dims) {
  return HermitianOperator(m, dims);
}

py::dict result_to_dict(const CheckResult& r) {
  py::dict d;
  d["check_id"] = r.check_id;
  d["claim"] = r.claim;
  d["params"] = r.params;
  d["computed"] = r.computed;
  d["expected"] = r.expected;
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass;
  d["seed"] = r.seed;
  d["runtime_ms"] = r.runtime_ms;
  return d;
}

py::dict construction_to_dict(const ConstructionResult& res) {
  py::dict d;
  d["claim"] = res.claim;
  d["valid"] = res.valid();
  py::list sides;
  for (const SideCondition& s : res.side_conditions) {
    py::dict sd;
    sd["name"] = s.name;
    sd["value"] = s.value;
    sd["bound"] = s.bound;
    sd["relation"] = s.relation;
    sd["tolerance"] = s.tolerance;
    sd["pass"] = s.pass;
    sides.append(sd);
  }
  d["side_conditions"] = sides;
  return d;
}

VerifyConfig config_from_kwargs(std::uint64_t seed, py::object tolerance,
                                py::object samples) {
  VerifyConfig cfg;
  cfg.seed = seed;
  if (!tolerance.is_none()) cfg.tolerance = tolerance.cast<double>();
  if (!samples.is_none()) cfg.samples = samples.cast<int>();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dense-matrix toolkit for quantum channel classes and "
            "entanglement measures";

  py::class_<HermitianOperator>(m, "Operator")
      .def(py::init(&make_op), py::arg("matrix"), py::arg("dims"))
      .def_property_readonly("matrix",
                             [](const HermitianOperator& o) { return o.mat(); })
      .def_property_readonly("dims",
                             [](const HermitianOperator& o) { return o.dims(); })
      .def_property_readonly("trace",
                             [](const HermitianOperator& o) { return o.trace(); })
      .def("__repr__", [](const HermitianOperator& o) {
        return "<Operator side=" + std::to_string(o.side()) + ">";
      });

  py::class_<Channel>(m, "Channel")
      .def_property_readonly("choi",
                             [](const Channel& c) { return c.choi; })
      .def_property_readonly("in_dims",
                             [](const Channel& c) { return c.in_dims; })
      .def_property_readonly("out_dims",
                             [](const Channel& c) { return c.out_dims; });

  // States.
  m.def("max_entangled",
        [](int d) { return max_entangled(d).density(); }, py::arg("d"));
  m.def("flip_operator", &flip_operator, py::arg("d"));
  m.def("werner", &werner, py::arg("d"), py::arg("beta"));
  m.def("smolin", &smolin);
  m.def("isotropic", &isotropic, py::arg("d"), py::arg("a"));
  m.def("ghz", [](int n, int r) { return ghz(n, r).density(); },
        py::arg("parties") = 3, py::arg("r") = 2);
  m.def("w_state", []() { return w_state().density(); });
  m.def("pure_from_schmidt", [](const std::vector<double>& lam) {
    return pure_from_schmidt(SchmidtVector(lam)).density();
  });

  // Tensor algebra.
  m.def("kron", [](const HermitianOperator& a, const HermitianOperator& b) {
    return kron(a, b);
  });
  m.def("partial_transpose",
        [](const HermitianOperator& x, const std::vector<int>& factors) {
          return partial_transpose(x, factors);
        },
        py::arg("operator"), py::arg("factors"));
  m.def("partial_trace",
        [](const HermitianOperator& x, const std::vector<int>& keep) {
          return partial_trace(x, keep);
        },
        py::arg("operator"), py::arg("keep"));
  m.def("eig_hermitian", [](const HermitianOperator& a) {
    const Spectrum s = eig_hermitian(a);
    return py::make_tuple(s.eigenvalues, s.unitary);
  });
  m.def("trace_norm", &trace_norm);
  m.def("min_eigenvalue", &min_eigenvalue);

  // Measures.
  m.def("renyi_entropy", [](const std::vector<double>& lam, double alpha) {
    return renyi_entropy(SchmidtVector(lam), alpha);
  });
  m.def("robustness_pure", [](const std::vector<double>& lam) {
    return robustness_pure(SchmidtVector(lam));
  });
  m.def("negativity",
        [](const HermitianOperator& rho, const std::vector<int>& a_factors) {
          return negativity(rho, Bipartition{a_factors});
        },
        py::arg("rho"), py::arg("a_factors") = std::vector<int>{0});
  m.def("renyi_relative_entropy",
        [](const HermitianOperator& rho, const HermitianOperator& sigma,
           double alpha) {
          return renyi_relative_entropy(rho, sigma, alpha).as_double();
        });
  m.def("relative_entropy_of_entanglement_pure",
        [](const std::vector<double>& lam, double alpha) {
          return relative_entropy_of_entanglement_pure(SchmidtVector(lam),
                                                       alpha);
        });
  m.def("optimal_sigma_alpha",
        [](const std::vector<double>& lam, double alpha) {
          return optimal_sigma_alpha(SchmidtVector(lam), alpha);
        });
  m.def("schmidt_coefficients",
        [](const HermitianOperator& rho, const std::vector<int>& a_factors) {
          const Spectrum s = eig_hermitian(rho);
          PureState psi(s.unitary.col(0), rho.dims());
          return schmidt(psi, a_factors).coefficients.coefficients;
        },
        py::arg("pure_density"), py::arg("a_factors") = std::vector<int>{0});

  // Separability.
  m.def("ppt_minimum",
        [](const HermitianOperator& rho, const std::vector<int>& a_factors) {
          return ppt_test(rho, Bipartition{a_factors}).min_eigenvalue;
        },
        py::arg("rho"), py::arg("a_factors") = std::vector<int>{0});
  m.def("ccnr_value",
        [](const HermitianOperator& rho, const std::vector<int>& a_factors) {
          return ccnr_value(rho, Bipartition{a_factors});
        },
        py::arg("rho"), py::arg("a_factors") = std::vector<int>{0});

  // Channels and constructions.
  m.def("apply_channel", &apply, py::arg("channel"), py::arg("state"));
  m.def("is_cptp",
        [](const Channel& ch) { return is_cptp(ch); });
  m.def("is_ppt_map",
        [](const Channel& ch) { return is_ppt_map(ch); });
  m.def("superactivation_channel",
        [](std::uint64_t seed) {
          const ConstructionResult res = superactivation(seed, 2000);
          return py::make_tuple(res.channel, construction_to_dict(res));
        },
        py::arg("seed") = 1);
  m.def("ppt_negativity_channel",
        [](int d, std::uint64_t seed) {
          const ConstructionResult res =
              ppt_preserving_negativity_channel(d, seed, 40);
          return py::make_tuple(res.channel, construction_to_dict(res));
        },
        py::arg("d") = 4, py::arg("seed") = 1);
  m.def("dne_schmidt_channel",
        [](int k, int d, std::uint64_t seed) {
          const ConstructionResult res = thm_dne_schmidt(k, d, seed, 100);
          return py::make_tuple(res.channel, construction_to_dict(res));
        },
        py::arg("k") = 2, py::arg("d") = 3, py::arg("seed") = 1);

  // Verification registry.
  m.def("list_checks", [] {
    py::list out;
    for (const CheckDef* d : list_checks())
      out.append(py::make_tuple(d->id, d->description));
    return out;
  });
  m.def("run_check",
        [](const std::string& id, std::uint64_t seed, py::object tolerance,
           py::object samples) {
          return result_to_dict(
              run_check(id, config_from_kwargs(seed, tolerance, samples)));
        },
        py::arg("check_id"), py::arg("seed") = 20240809,
        py::arg("tolerance") = py::none(), py::arg("samples") = py::none());
}
