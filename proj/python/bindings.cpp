// Python bindings: complexes, homology, class orders, quotients and checks.
// Groups are returned as their text form plus (free_rank, invariant_factors).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matchhom/certificates.hpp"
#include "matchhom/errors.hpp"
#include "matchhom/report.hpp"

namespace py = pybind11;
using namespace matchhom;

namespace {

ComplexSpec make_spec(std::optional<int> matching, std::optional<std::string> bounded, std::optional<std::string> gamma,
                      std::optional<std::string> delta) {
  const int chosen = matching.has_value() + bounded.has_value() + gamma.has_value() + delta.has_value();
  if (chosen != 1) throw InvalidInput("pass exactly one of matching, bounded, gamma, delta");
  if (matching) return ComplexSpec::matching(*matching);
  if (bounded) return ComplexSpec::bounded(parse_degree_vector(*bounded));
  if (gamma) return ComplexSpec::gamma(BlockPartition::consecutive(parse_degree_vector(*gamma)));
  return ComplexSpec::delta(BlockPartition::consecutive(parse_degree_vector(*delta)));
}

py::dict summary_dict(const HomologySummary& h) {
  py::dict groups;
  for (int d = h.min_degree; d <= h.max_degree(); ++d) groups[py::int_(d)] = h.at(d).to_string();
  py::dict out;
  out["complex"] = h.complex_id;
  out["coefficients"] = h.coefficients;
  out["groups"] = groups;
  return out;
}

py::dict report_dict(const CertificateReport& r) {
  return py::module_::import("json").attr("loads")(to_json(r, false).dump());
}

}  // namespace

PYBIND11_MODULE(matchhom, m) {
  m.doc() = "Homology of matching and bounded-degree complexes";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<InternalInvariant>(m, "InternalInvariant", PyExc_AssertionError);

  m.def("expand_lambda", [](const std::string& text) { return parse_degree_vector(text); },
        "'2^6,1^2' -> [2, 2, 2, 2, 2, 2, 1, 1]");

  m.def(
      "face_counts",
      [](std::optional<int> matching, std::optional<std::string> bounded, std::optional<std::string> gamma,
         std::optional<std::string> delta) { return face_counts(make_spec(matching, bounded, gamma, delta)); },
      py::kw_only(), py::arg("matching") = py::none(), py::arg("bounded") = py::none(), py::arg("gamma") = py::none(),
      py::arg("delta") = py::none(), "f_{-1}, f_0, ... of a complex");

  m.def(
      "faces",
      [](int dim, std::optional<int> matching, std::optional<std::string> bounded) {
        std::vector<std::string> out;
        for (const auto& s : enumerate_faces(make_spec(matching, bounded, {}, {}), dim)) out.push_back(s.to_string());
        return out;
      },
      py::arg("dim"), py::kw_only(), py::arg("matching") = py::none(), py::arg("bounded") = py::none());

  m.def(
      "homology",
      [](std::optional<int> matching, std::optional<std::string> bounded, std::optional<std::string> gamma,
         std::optional<std::string> delta, std::optional<std::uint32_t> mod, int threads) {
        const auto spec = make_spec(matching, bounded, gamma, delta);
        HomologyOptions o;
        o.threads = threads;
        py::gil_scoped_release release;
        const auto h = mod ? betti_mod_p(spec, *mod, o) : homology_free(spec, o);
        py::gil_scoped_acquire acquire;
        return summary_dict(h);
      },
      py::kw_only(), py::arg("matching") = py::none(), py::arg("bounded") = py::none(), py::arg("gamma") = py::none(),
      py::arg("delta") = py::none(), py::arg("mod") = py::none(), py::arg("threads") = 1,
      "Reduced homology; with mod=p the field dimensions over F_p");

  m.def(
      "quotient_homology",
      [](int n, const std::string& lambda) {
        const FreeChainComplex c(ComplexSpec::matching(n));
        const QuotientComplex q(c, YoungAction(BlockPartition::consecutive(parse_degree_vector(lambda))));
        const auto h = homology_presented(q, true);
        py::dict out;
        out["total"] = summary_dict(h.total);
        out["gamma"] = summary_dict(h.gamma);
        out["delta_mod2"] = summary_dict(h.delta_mod2);
        return out;
      },
      py::arg("n"), py::arg("lambda_"), "Homology of C(M_N)/S_lambda with its Gamma and Delta parts");

  m.def(
      "orbit_counts",
      [](int n, const std::string& lambda) {
        const FreeChainComplex c(ComplexSpec::matching(n));
        const QuotientComplex q(c, YoungAction(BlockPartition::consecutive(parse_degree_vector(lambda))));
        return py::module_::import("json").attr("loads")(to_json(orbit_report(q)).dump());
      },
      py::arg("n"), py::arg("lambda_"));

  m.def(
      "class_order",
      [](const std::string& chain_text, std::optional<int> matching, std::optional<std::string> bounded) {
        const auto chains = parse_chains(chain_text);
        if (chains.size() != 1) throw InvalidInput("expected exactly one chain");
        const FreeChainComplex c(make_spec(matching, bounded, {}, {}));
        return to_string(class_order(chains[0].chain, c, chains[0].chain.degree()));
      },
      py::arg("chain"), py::kw_only(), py::arg("matching") = py::none(), py::arg("bounded") = py::none(),
      "Order of the homology class of a chain document; 'infinite' for free classes");

  m.def("gamma_prime", [] { return format_chain("gamma_prime", build_gamma_prime()); });
  m.def("gamma", [] { return format_chain("gamma", build_gamma()); });
  m.def("nu", &nu);

  m.def(
      "verify",
      [](const std::string& name, std::optional<int> n, std::optional<int> d, std::optional<std::string> lambda) {
        if (name == "gamma-prime") return report_dict(verify_gamma_prime());
        if (name == "gamma-lift") return report_dict(verify_gamma_lift());
        if (name == "matching-table") return report_dict(reproduce_table1(3, n.value_or(10)));
        if (name == "edge-split") {
          return report_dict(verify_eq1_splitting(n.value_or(7), d ? std::vector<int>{*d} : std::vector<int>{}));
        }
        if (name == "pair-sequence") return report_dict(verify_pair_les(n.value_or(7), d.value_or(1)));
        if (name == "quotient-sequence") {
          if (!n || !lambda) throw InvalidInput("quotient-sequence needs n and lambda_");
          return report_dict(verify_corollary_les(*n, parse_degree_vector(*lambda), d));
        }
        throw InvalidInput("unknown check '" + name + "'");
      },
      py::arg("name"), py::kw_only(), py::arg("n") = py::none(), py::arg("d") = py::none(),
      py::arg("lambda_") = py::none());
}
