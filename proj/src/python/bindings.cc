// Copyright 2026 The Rolegrad Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings: soft-logic connectives, constraint losses over NumPy
// probability grids, violation checks, synthetic data and the CLI.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "rolegrad/cli.h"
#include "rolegrad/constraints.h"
#include "rolegrad/corpus.h"
#include "rolegrad/decode.h"
#include "rolegrad/error.h"
#include "rolegrad/eval.h"
#include "rolegrad/crf.h"
#include "rolegrad/labels.h"
#include "rolegrad/softlogic.h"
#include "rolegrad/synth.h"

namespace py = pybind11;
using namespace rolegrad;

namespace {

ScoreGrid to_grid(const Eigen::MatrixXd& probs) {
  ScoreGrid g;
  g.probs = probs;
  g.validate();
  return g;
}

LabelSet make_labels(const std::vector<std::string>& all,
                     const std::optional<std::vector<std::string>>& core) {
  return LabelSet(all, core ? *core : all);
}

py::tuple penalty(const GridPenalty& p) {
  py::list grads;
  for (const auto& g : p.gradient) grads.append(g);
  return py::make_tuple(p.loss, grads);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differentiable structural constraints for BIO role labeling";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("godel_and", [](const std::vector<double>& v) {
    return softlogic::godel_and(v).value;
  });
  m.def("godel_or", [](const std::vector<double>& v) {
    return softlogic::godel_or(v).value;
  });
  m.def("negate", [](double a) { return softlogic::negate(a).value; });
  m.def("product_imply", [](double a, double b, double eps) {
    return softlogic::product_imply(a, b, eps).value;
  }, py::arg("a"), py::arg("b"), py::arg("epsilon") = softlogic::kDefaultEpsilon);
  m.def("imply_nll", [](double a, double b, double eps) {
    const auto t = softlogic::imply_nll(a, b, eps);
    return py::make_tuple(t.loss, t.gradient);
  }, py::arg("a"), py::arg("b"), py::arg("epsilon") = softlogic::kDefaultEpsilon,
     "Returns (loss, [d/da, d/db]).");

  py::class_<LabelSet>(m, "LabelSet")
      .def(py::init(&make_labels), py::arg("all"), py::arg("core") = py::none())
      .def_static("standard", &LabelSet::standard)
      .def_property_readonly("args", &LabelSet::args)
      .def_property_readonly("core", &LabelSet::core)
      .def_property_readonly("num_tags", &LabelSet::num_tags)
      .def("tag_index", &LabelSet::tag_index)
      .def("tag_name", &LabelSet::tag_name)
      .def("arg_index", &LabelSet::arg_index)
      .def("encode", [](const LabelSet& l, const std::vector<std::string>& t) {
        return l.encode(t);
      })
      .def("decode", [](const LabelSet& l, const std::vector<int>& t) {
        return l.decode(t);
      })
      .def_static("is_valid", [](const std::vector<int>& t) {
        return LabelSet::is_valid(t);
      });

  m.def("loss_unique", [](const Eigen::MatrixXd& probs, const LabelSet& labels,
                          double eps) {
    return penalty(loss_unique(to_grid(probs), labels, eps));
  }, py::arg("probs"), py::arg("labels"),
     py::arg("epsilon") = softlogic::kDefaultEpsilon,
     "Returns (loss, [gradient]).");
  m.def("loss_overlap", [](const std::vector<Eigen::MatrixXd>& probs,
                           const LabelSet& labels, std::optional<int> beam_k,
                           double eps) {
    std::vector<ScoreGrid> grids;
    for (const auto& p : probs) grids.push_back(to_grid(p));
    return penalty(loss_overlap(grids, labels, beam_k, eps));
  }, py::arg("grids"), py::arg("labels"), py::arg("beam_k") = 4,
     py::arg("epsilon") = softlogic::kDefaultEpsilon,
     "Returns (loss, [gradient per grid]). beam_k=None is exhaustive.");
  m.def("loss_frame", [](const Eigen::MatrixXd& probs,
                         const std::vector<std::string>& roleset,
                         const LabelSet& labels, double eps) {
    std::vector<int> allowed;
    for (const auto& r : roleset) {
      const int a = labels.arg_index(r);
      if (a < 0) throw ConfigError("unknown label " + r);
      allowed.push_back(a);
    }
    return penalty(loss_frame(to_grid(probs), allowed, labels, eps));
  }, py::arg("probs"), py::arg("roleset"), py::arg("labels"),
     py::arg("epsilon") = softlogic::kDefaultEpsilon);

  m.def("viterbi", [](const Eigen::MatrixXd& emissions,
                      const std::optional<Eigen::MatrixXd>& transitions) {
    const int t = static_cast<int>(emissions.cols());
    const ViterbiPath p = viterbi(
        emissions, transitions ? *transitions : transition_mask(t, true));
    return py::make_tuple(p.tags, p.score);
  }, py::arg("emissions"), py::arg("transitions") = py::none());

  m.def("check_file", [](const std::string& path) {
    const Corpus corpus = load_corpus(path);
    const LabelSet labels = LabelSet::standard().extended(corpus_labels(corpus));
    const EvalReport r = evaluate(corpus, encode_gold(corpus, labels), labels,
                                  nullptr);
    py::dict d;
    d["rho_u"] = r.rho_u;
    d["rho_o"] = r.rho_o;
    d["propositions"] = r.propositions;
    d["sentences"] = r.sentences;
    return d;
  }, py::arg("path"), "Violation rates of the gold annotations in a corpus.");

  m.def("synth_corpus", [](std::uint64_t seed, int n, int vocab, int max_len,
                           double bias, const std::string& out) {
    save_jsonl(synth_corpus(seed, n, vocab, max_len, synth_frames(), bias), out);
  }, py::arg("seed"), py::arg("sentences"), py::arg("vocab_size"),
     py::arg("max_len"), py::arg("bias"), py::arg("out"));

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "rolegrad");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line tool; returns (code, stdout, stderr).");
}
