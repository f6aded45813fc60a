#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "emaudit/audit.hpp"
#include "emaudit/datagen.hpp"
#include "emaudit/dataset.hpp"
#include "emaudit/errors.hpp"
#include "emaudit/matchers.hpp"
#include "emaudit/report.hpp"
#include "emaudit/rng.hpp"
#include "emaudit/sensitivity.hpp"
#include "emaudit/similarity.hpp"

namespace py = pybind11;
using namespace emaudit;

namespace {

AttributeKind kind_from(const std::string& text) {
  auto kind = parse_attribute_kind(text);
  if (!kind) throw ConfigError("unknown attribute kind: '" + text + "'");
  return *kind;
}

Feature feature_from(const std::string& text) {
  auto f = parse_feature(text);
  if (!f) throw ConfigError("unknown similarity feature: '" + text + "'");
  return *f;
}

MeasureId measure_from(const std::string& text) {
  auto id = parse_measure(text);
  if (!id) throw ConfigError("unknown measure: '" + text + "'");
  return *id;
}

std::optional<std::string> label_str(const std::optional<MatchLabel>& label) {
  if (!label) return std::nullopt;
  return std::string(1, label_char(*label));
}

MatchLabel label_from(const std::string& text) {
  auto label = parse_label(text);
  if (!label) throw ConfigError("labels must be 'M' or 'N'");
  return *label;
}

DisparityConfig disparity_config(double tau, const std::string& op,
                                 const std::string& convention, const std::string& baseline) {
  DisparityConfig cfg;
  cfg.tau = tau;
  if (op == "sub") {
    cfg.op = DisparityOp::Sub;
  } else if (op == "div") {
    cfg.op = DisparityOp::Div;
  } else {
    throw ConfigError("op must be 'sub' or 'div'");
  }
  if (convention == "eq") {
    cfg.convention = Convention::Equation;
  } else if (convention == "table") {
    cfg.convention = Convention::Table;
  } else {
    throw ConfigError("convention must be 'eq' or 'table'");
  }
  if (baseline == "overall") {
    cfg.baseline = BaselineKind::Overall;
  } else if (baseline == "complement") {
    cfg.baseline = BaselineKind::Complement;
  } else {
    throw ConfigError("baseline must be 'overall' or 'complement'");
  }
  return cfg;
}

Direction direction_from(const std::string& text) {
  if (text == "higher") return Direction::HigherBetter;
  if (text == "lower") return Direction::LowerBetter;
  if (text == "symmetric") return Direction::Symmetric;
  throw ConfigError("direction must be 'higher', 'lower' or 'symmetric'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Group-fairness auditing primitives for entity matching";

  py::register_exception<AuditError>(m, "AuditError");

  py::class_<GroupEncoding>(m, "GroupEncoding")
      .def_static("from_string", &GroupEncoding::from_string)
      .def("bits", &GroupEncoding::to_string)
      .def("count", &GroupEncoding::count)
      .def("contains", &GroupEncoding::contains, py::arg("entity"))
      .def("__eq__", [](const GroupEncoding& a, const GroupEncoding& b) { return a == b; })
      .def("__repr__",
           [](const GroupEncoding& e) { return "GroupEncoding('" + e.to_string() + "')"; });

  py::class_<GroupUniverse>(m, "GroupUniverse")
      .def(py::init([](const std::vector<std::tuple<std::string, std::string,
                                                    std::vector<std::string>>>& attrs) {
             std::vector<SensitiveAttribute> attributes;
             for (const auto& [name, kind, domain] : attrs) {
               attributes.push_back({name, kind_from(kind), domain});
             }
             return GroupUniverse(std::move(attributes));
           }),
           py::arg("attributes"),
           "attributes: list of (name, kind, values); kind is binary, "
           "multi-exclusive or setwise")
      .def("size", &GroupUniverse::size)
      .def("encode", &GroupUniverse::encode, py::arg("memberships"))
      .def("decode", &GroupUniverse::decode, py::arg("encoding"))
      .def("label", &GroupUniverse::label, py::arg("encoding"))
      .def("level_subgroups", &GroupUniverse::level_subgroups, py::arg("k"),
           py::arg("pure_setwise") = false);

  py::class_<Correspondence>(m, "Correspondence")
      .def(py::init([](const GroupUniverse& universe, std::string id_left,
                       std::string id_right, const std::vector<std::string>& groups_left,
                       const std::vector<std::string>& groups_right,
                       std::optional<double> score, std::optional<std::string> prediction,
                       const std::string& label) {
             Correspondence c;
             c.id_left = std::move(id_left);
             c.id_right = std::move(id_right);
             c.groups_left = universe.encode(groups_left);
             c.groups_right = universe.encode(groups_right);
             c.score = score;
             if (prediction) c.decision = label_from(*prediction);
             c.truth = label_from(label);
             return c;
           }),
           py::arg("universe"), py::arg("id_left"), py::arg("id_right"),
           py::arg("groups_left"), py::arg("groups_right"), py::arg("score") = py::none(),
           py::arg("prediction") = py::none(), py::arg("label") = "N")
      .def_readonly("id_left", &Correspondence::id_left)
      .def_readonly("id_right", &Correspondence::id_right)
      .def_readonly("groups_left", &Correspondence::groups_left)
      .def_readonly("groups_right", &Correspondence::groups_right)
      .def_readonly("score", &Correspondence::score)
      .def_property_readonly(
          "prediction", [](const Correspondence& c) { return label_str(c.decision); })
      .def_property_readonly(
          "label", [](const Correspondence& c) { return std::string(1, label_char(c.truth)); });

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                       std::uint64_t tn) {
             return ConfusionMatrix{tp, fp, fn, tn};
           }),
           py::arg("tp") = 0, py::arg("fp") = 0, py::arg("fn") = 0, py::arg("tn") = 0)
      .def_readonly("tp", &ConfusionMatrix::tp)
      .def_readonly("fp", &ConfusionMatrix::fp)
      .def_readonly("fn", &ConfusionMatrix::fn)
      .def_readonly("tn", &ConfusionMatrix::tn)
      .def("total", &ConfusionMatrix::total)
      .def("__repr__", [](const ConfusionMatrix& m_) {
        return "ConfusionMatrix(tp=" + std::to_string(m_.tp) + ", fp=" +
               std::to_string(m_.fp) + ", fn=" + std::to_string(m_.fn) + ", tn=" +
               std::to_string(m_.tn) + ")";
      });

  m.def("load_correspondences",
        [](const std::string& path, const GroupUniverse& universe, bool require_prediction) {
          FormatConfig format;
          format.require_prediction = require_prediction;
          return load_correspondences_file(path, universe, format);
        },
        py::arg("path"), py::arg("universe"), py::arg("require_prediction") = true);

  m.def("legitimate_single", &legitimate_single, py::arg("correspondence"), py::arg("group"));
  m.def("legitimate_pairwise",
        [](const Correspondence& c, const GroupEncoding& a, const GroupEncoding& b) {
          return legitimate_pairwise(c, {a, b});
        },
        py::arg("correspondence"), py::arg("group_a"), py::arg("group_b"));

  m.def("accumulate_single",
        [](const std::vector<Correspondence>& cs, const GroupEncoding& g) {
          return accumulate_single(cs, g);
        },
        py::arg("correspondences"), py::arg("group"));
  m.def("accumulate_pairwise",
        [](const std::vector<Correspondence>& cs, const GroupEncoding& a,
           const GroupEncoding& b) { return accumulate_pairwise(cs, {a, b}); },
        py::arg("correspondences"), py::arg("group_a"), py::arg("group_b"));
  m.def("overall_matrix",
        [](const std::vector<Correspondence>& cs) { return overall_matrix(cs); },
        py::arg("correspondences"));

  m.def("rates", [](const ConfusionMatrix& matrix) {
    RateSet r = rates(matrix);
    py::dict out;
    auto put = [&](const char* key, const std::optional<double>& v) {
      out[key] = v ? py::cast(*v) : py::none();
    };
    put("tpr", r.tpr);
    put("fpr", r.fpr);
    put("fnr", r.fnr);
    put("tnr", r.tnr);
    put("ppv", r.ppv);
    put("npv", r.npv);
    put("fdr", r.fdr);
    put("for", r.forr);
    put("accuracy", r.accuracy);
    put("positive_rate", r.positive_rate);
    put("precision", r.precision());
    put("recall", r.recall());
    put("f1", r.f1);
    return out;
  });

  m.def("measure_value",
        [](const std::string& measure, const ConfusionMatrix& matrix) {
          return measure_value(measure_from(measure), matrix);
        },
        py::arg("measure"), py::arg("matrix"));
  m.def("eo_value", [](const ConfusionMatrix& matrix) { return eo_value(matrix); },
        py::arg("matrix"));
  m.def("applicable",
        [](const std::string& measure, const std::string& mode, bool overlapping) {
          AuditMode audit_mode = mode == "pairwise" ? AuditMode::Pairwise : AuditMode::Single;
          return applicable(measure_from(measure), audit_mode, overlapping);
        },
        py::arg("measure"), py::arg("mode"), py::arg("pair_overlapping") = false);

  m.def("similarity",
        [](const std::string& feature, const std::string& a, const std::string& b,
           bool case_insensitive) {
          SimilarityOptions options;
          options.case_insensitive = case_insensitive;
          return similarity(feature_from(feature), a, b, options);
        },
        py::arg("feature"), py::arg("a"), py::arg("b"), py::arg("case_insensitive") = true);
  m.def("levenshtein",
        [](const std::string& a, const std::string& b) { return levenshtein(a, b); },
        py::arg("a"), py::arg("b"));
  m.def("score_match",
        [](double score, double threshold) {
          return std::string(1, label_char(score_match(score, threshold)));
        },
        py::arg("score"), py::arg("threshold"));

  m.def("disparity_sub",
        [](double baseline, double group, const std::string& direction) {
          return disparity_sub(baseline, group, direction_from(direction));
        },
        py::arg("baseline"), py::arg("group"), py::arg("direction") = "higher");
  m.def("disparity_div",
        [](double baseline, double group, const std::string& direction) {
          return disparity_div(baseline, group, direction_from(direction));
        },
        py::arg("baseline"), py::arg("group"), py::arg("direction") = "higher");
  m.def("pair_gap",
        [](double protected_p, double other_p, const std::string& direction,
           const std::string& op) {
          return pair_gap(protected_p, other_p, direction_from(direction),
                          op == "div" ? DisparityOp::Div : DisparityOp::Sub);
        },
        py::arg("protected_p"), py::arg("other_p"), py::arg("direction") = "higher",
        py::arg("op") = "sub");

  m.def("run_audit_json",
        [](const std::vector<Correspondence>& cs, const GroupUniverse& universe,
           const std::string& mode, std::size_t level,
           const std::optional<std::vector<std::vector<std::string>>>& targets,
           const std::optional<std::vector<std::string>>& measures, double tau,
           const std::string& op, const std::string& convention, const std::string& baseline,
           std::optional<double> threshold, bool pure_setwise) {
          std::vector<GroupEncoding> groups;
          if (targets) {
            for (const auto& names : *targets) groups.push_back(universe.encode(names));
          } else {
            groups = universe.level_subgroups(level, pure_setwise);
          }
          std::vector<AuditTarget> audit_targets;
          if (mode == "single" || mode == "both") {
            for (const auto& g : groups) audit_targets.push_back(AuditTarget::single(g));
          }
          if (mode == "pairwise" || mode == "both") {
            for (std::size_t i = 0; i < groups.size(); ++i) {
              for (std::size_t j = i; j < groups.size(); ++j) {
                audit_targets.push_back(AuditTarget::pairwise(groups[i], groups[j]));
              }
            }
          }
          std::vector<MeasureId> ids;
          if (measures) {
            for (const auto& name : *measures) ids.push_back(measure_from(name));
          } else {
            for (const auto& info : all_measures()) ids.push_back(info.id);
          }
          auto resolved = with_decisions(cs, threshold);
          AuditReport report = run_audit(resolved, audit_targets, ids,
                                         disparity_config(tau, op, convention, baseline),
                                         &universe);
          return report_to_json(report, universe).dump();
        },
        py::arg("correspondences"), py::arg("universe"), py::arg("mode") = "single",
        py::arg("level") = 1, py::arg("targets") = py::none(),
        py::arg("measures") = py::none(), py::arg("tau") = 0.2, py::arg("op") = "sub",
        py::arg("convention") = "eq", py::arg("baseline") = "overall",
        py::arg("threshold") = py::none(), py::arg("pure_setwise") = false);

  m.def("sensitivity_l2",
        [](const std::vector<std::size_t>& counts) { return sensitivity_l2(counts); },
        py::arg("unfair_counts"));
  m.def("perturb_name",
        [](const std::string& name, std::uint64_t seed) {
          PortableRng rng(seed);
          return perturb_name(name, rng);
        },
        py::arg("name"), py::arg("seed"));
}
