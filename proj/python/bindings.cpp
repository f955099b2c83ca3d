#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "advcurate/conf_intervals.hpp"
#include "advcurate/curation.hpp"
#include "advcurate/errors.hpp"
#include "advcurate/label_matrix.hpp"
#include "advcurate/lf_pruning.hpp"
#include "advcurate/pipeline.hpp"
#include "advcurate/prob_labeling.hpp"
#include "advcurate/stat_kernels.hpp"
#include "advcurate/synth_bench.hpp"
#include "advcurate/validation.hpp"

namespace py = pybind11;
using namespace advcurate;

namespace {

LabelMatrix make_matrix(std::vector<std::string> names, const std::vector<std::vector<int>>& rows,
                        std::optional<int> num_classes) {
  int k = 2;
  if (num_classes) {
    k = *num_classes;
  } else {
    for (const auto& r : rows)
      for (int v : r) k = std::max(k, v);
  }
  return LabelMatrix::from_rows(std::move(names), k, rows);
}

py::dict report_dict(const ValidationReport& r) {
  py::dict d;
  d["sizes"] = r.sizes;
  d["accuracies"] = r.accuracies;
  d["ci_halfwidths"] = r.ci_halfwidths;
  d["rho"] = r.rho;
  d["p_value"] = r.p_value;
  d["gamma"] = r.gamma;
  d["degenerate"] = r.degenerate;
  d["verdict"] = std::string(to_string(r.verdict));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curation of adversarially ordered datasets from labeling-function verdicts.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

  py::class_<LabelMatrix>(m, "LabelMatrix")
      .def(py::init(&make_matrix), py::arg("lf_names"), py::arg("rows"), py::arg("num_classes") = py::none())
      .def_property_readonly("num_samples", &LabelMatrix::num_samples)
      .def_property_readonly("num_lfs", &LabelMatrix::num_lfs)
      .def_property_readonly("num_classes", &LabelMatrix::num_classes)
      .def_property_readonly("lf_names", &LabelMatrix::lf_names)
      .def("row", [](const LabelMatrix& self, std::size_t i) {
        auto r = self.row(i);
        return std::vector<int>(r.begin(), r.end());
      })
      .def("restrict_to", [](const LabelMatrix& self, const std::vector<std::size_t>& idx) {
        return self.restrict_to(idx);
      })
      .def("__repr__", [](const LabelMatrix& self) {
        return "<LabelMatrix " + std::to_string(self.num_samples()) + "x" + std::to_string(self.num_lfs()) +
               " K=" + std::to_string(self.num_classes()) + ">";
      });

  m.def("load_label_matrix", [](const std::string& path) {
    auto loaded = load_label_matrix(std::filesystem::path(path));
    std::optional<std::vector<int>> truth;
    if (loaded.truth) truth = loaded.truth->labels;
    return py::make_tuple(std::move(loaded.matrix), truth);
  }, py::arg("path"), "Returns (matrix, true_labels or None).");
  m.def("coverage", &coverage, py::arg("matrix"), py::arg("lf_index"));

  m.def("pearson", [](const std::vector<double>& u, const std::vector<double>& v) {
    return stats::pearson(u, v);
  }, "Pearson correlation, or None for a constant input.");
  m.def("regularized_incomplete_beta", &stats::regularized_incomplete_beta, py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("beta_quantile", &stats::beta_quantile, py::arg("q"), py::arg("a"), py::arg("b"));
  m.def("student_t_two_sided_p", &stats::student_t_two_sided_p, py::arg("t_stat"), py::arg("dof"));

  m.def("prune", [](const LabelMatrix& mat, double delta) {
    auto r = prune_detailed(mat, delta);
    py::dict d;
    d["kept"] = r.kept;
    d["edges"] = r.graph.edges();
    d["cliques"] = r.cliques;
    d["ranking"] = r.ranking.order;
    return d;
  }, py::arg("matrix"), py::arg("delta") = kDefaultDelta);
  m.def("maximal_cliques", [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    DependencyGraph g(n, 0.0);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return maximal_cliques(g);
  }, py::arg("node_count"), py::arg("edges"));

  py::enum_<LabelerMethod>(m, "LabelerMethod")
      .value("majority_vote", LabelerMethod::majority_vote)
      .value("generative", LabelerMethod::generative);

  py::class_<WeightVector>(m, "WeightVector")
      .def_property_readonly("num_classes", &WeightVector::num_classes)
      .def_property_readonly("num_lfs", &WeightVector::num_lfs)
      .def_property_readonly("method", &WeightVector::method)
      .def("at", &WeightVector::at, py::arg("label"), py::arg("lf"));

  py::class_<ProbabilisticLabel>(m, "ProbabilisticLabel")
      .def_readonly("label", &ProbabilisticLabel::label)
      .def_readonly("confidence", &ProbabilisticLabel::confidence)
      .def_readonly("vote_count", &ProbabilisticLabel::vote_count);

  m.def("majority_weights", &majority_weights, py::arg("matrix"));
  m.def("fit_generative_weights", &fit_generative_weights, py::arg("matrix"), py::arg("max_iters") = 100,
        py::arg("tol") = 1e-6);
  m.def("combine", &combine, py::arg("matrix"), py::arg("weights"), py::arg("sample"));

  py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
      .def_readonly("lower", &ConfidenceInterval::lower)
      .def_readonly("upper", &ConfidenceInterval::upper)
      .def_readonly("n", &ConfidenceInterval::n)
      .def_readonly("s", &ConfidenceInterval::s)
      .def_readonly("alpha", &ConfidenceInterval::alpha);

  m.def("clopper_pearson", &clopper_pearson, py::arg("n"), py::arg("s"), py::arg("alpha") = kDefaultAlpha);
  m.def("intervals_for_matrix", &intervals_for_matrix, py::arg("matrix"), py::arg("weights"),
        py::arg("alpha") = kDefaultAlpha);

  m.def("order_samples", [](const std::vector<double>& keys) { return order_samples(keys); }, py::arg("keys"));
  m.def("prefix_sizes", &prefix_sizes, py::arg("total"), py::arg("num_datasets"));

  m.def("accuracy", [](const std::vector<int>& t, const std::vector<int>& w) { return accuracy(t, w); });
  m.def("spearman", [](const std::vector<double>& values) {
    auto r = spearman(values);
    return py::make_tuple(r.rho, r.p_value);
  }, py::arg("values"), "Returns (rho, p_value).");
  m.def("spearman_p_value", &spearman_p_value, py::arg("rho"), py::arg("n"));
  m.def("validity_verdict", [](double rho, double p, double gamma) {
    return std::string(to_string(validity_verdict(rho, p, gamma)));
  }, py::arg("rho"), py::arg("p_value"), py::arg("gamma") = kDefaultGamma);
  m.def("binomial_ci_halfwidth", &binomial_ci_halfwidth, py::arg("acc"), py::arg("size"));

  m.def("generate_benchmark", [](std::uint64_t seed, std::size_t num_samples) {
    auto c = synth::generate(synth::benchmark_config(seed, num_samples));
    return py::make_tuple(std::move(c.matrix), c.truth.labels, std::vector<bool>(c.hard_mask));
  }, py::arg("seed"), py::arg("num_samples") = 5000, "Returns (matrix, true_labels, hard_mask).");

  m.def("run_pipeline", [](const LabelMatrix& mat, std::optional<std::vector<int>> truth, double delta, double alpha,
                           double gamma, std::size_t num_datasets, const std::string& labeler, bool skip_pruning) {
    PipelineConfig c{delta, alpha, gamma, num_datasets,
                     labeler == "generative" ? LabelerMethod::generative : LabelerMethod::majority_vote,
                     skip_pruning};
    std::optional<GroundTruth> gt;
    if (truth) gt = GroundTruth{*truth};
    auto r = run_pipeline(mat, c, gt ? &*gt : nullptr);
    py::dict d;
    d["kept_lfs"] = r.kept_lfs;
    d["ordering"] = r.sequence.ordering;
    d["prefix_sizes"] = r.sequence.prefix_sizes;
    d["labels"] = r.sequence.labels;
    d["theta_l"] = r.sequence.keys;
    d["mean_confidence"] = r.mean_confidence();
    d["report"] = r.report ? py::object(report_dict(*r.report)) : py::object(py::none());
    return d;
  }, py::arg("matrix"), py::arg("true_labels") = py::none(), py::arg("delta") = kDefaultDelta,
     py::arg("alpha") = kDefaultAlpha, py::arg("gamma") = kDefaultGamma,
     py::arg("num_datasets") = kDefaultNumDatasets, py::arg("labeler") = "generative",
     py::arg("skip_pruning") = false);
}
