#include "emaudit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "emaudit/csv.hpp"
#include "emaudit/errors.hpp"

namespace emaudit {

namespace {

using nlohmann::json;

json opt(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

std::string two_decimals(const std::optional<double>& value) {
  if (!value) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *value);
  return buf;
}

std::string target_label(const AuditTarget& target, const GroupUniverse& universe) {
  if (target.mode == AuditMode::Single) return universe.label(target.group);
  return universe.label(target.pair.first) + ":" + universe.label(target.pair.second);
}

json rates_json(const RateSet& r) {
  json out;
  out["tpr"] = opt(r.tpr);
  out["fpr"] = opt(r.fpr);
  out["fnr"] = opt(r.fnr);
  out["tnr"] = opt(r.tnr);
  out["ppv"] = opt(r.ppv);
  out["npv"] = opt(r.npv);
  out["fdr"] = opt(r.fdr);
  out["for"] = opt(r.forr);
  out["accuracy"] = opt(r.accuracy);
  out["positive_rate"] = opt(r.positive_rate);
  out["precision"] = opt(r.precision());
  out["recall"] = opt(r.recall());
  out["f1"] = opt(r.f1);
  return out;
}

}  // namespace

json report_to_json(const AuditReport& report, const GroupUniverse& universe) {
  json doc;
  doc["schema"] = "emaudit-report-v1";
  doc["config"] = {
      {"tau", report.config.tau},
      {"op", std::string(disparity_op_name(report.config.op))},
      {"convention", std::string(convention_name(report.config.convention))},
      {"baseline", std::string(baseline_name(report.config.baseline))},
  };
  doc["notes"] = json::array({
      "eq convention: clamped gap against the baseline per the measure's direction",
      "table convention: signed group-vs-baseline gap; div is ratio minus one",
      "EO carries its two conditions; its disparity is the worse of the two and "
      "its flag is the union of the TPR and FPR condition flags",
  });
  doc["overall"] = {
      {"counts",
       {{"tp", report.overall.tp},
        {"fp", report.overall.fp},
        {"fn", report.overall.fn},
        {"tn", report.overall.tn}}},
      {"rates", rates_json(report.overall_rates)},
  };

  json records = json::array();
  for (const auto& rec : report.records) {
    json r;
    r["mode"] = rec.target.mode == AuditMode::Single ? "single" : "pairwise";
    r["target"] = target_label(rec.target, universe);
    r["measure"] = std::string(measure_name(rec.measure));
    r["value"] = opt(rec.group_value);
    r["baseline"] = opt(rec.baseline_value);
    r["disparity"] = opt(rec.disparity);
    if (rec.measure == MeasureId::EO) {
      r["value_fpr"] = opt(rec.group_value2);
      r["baseline_fpr"] = opt(rec.baseline_value2);
    }
    r["applicable"] = rec.applicable;
    r["unfair"] = rec.unfair;
    records.push_back(std::move(r));
  }
  doc["records"] = std::move(records);

  json single = json::array();
  for (const auto& g : report.discriminated_single) single.push_back(universe.label(g));
  json pairwise = json::array();
  for (const auto& [a, b] : report.discriminated_pairwise) {
    pairwise.push_back(json::array({universe.label(a), universe.label(b)}));
  }
  doc["discriminated"] = {{"single", std::move(single)}, {"pairwise", std::move(pairwise)}};
  return doc;
}

void write_report_csv(std::ostream& out, const AuditReport& report,
                      const GroupUniverse& universe) {
  csv::write_row(out, {"mode", "target", "measure", "value", "baseline", "disparity",
                       "applicable", "unfair"});
  for (const auto& rec : report.records) {
    csv::write_row(out, {
                            rec.target.mode == AuditMode::Single ? "single" : "pairwise",
                            target_label(rec.target, universe),
                            std::string(measure_name(rec.measure)),
                            two_decimals(rec.group_value),
                            two_decimals(rec.baseline_value),
                            two_decimals(rec.disparity),
                            rec.applicable ? "true" : "false",
                            rec.unfair ? "true" : "false",
                        });
  }
}

namespace {

std::string render_mode_grid(const json& report, const std::string& mode) {
  std::vector<std::string> targets;
  std::vector<std::string> measures;
  for (const auto& rec : report.at("records")) {
    if (rec.at("mode") != mode) continue;
    std::string target = rec.at("target");
    std::string measure = rec.at("measure");
    if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
      targets.push_back(target);
    }
    if (std::find(measures.begin(), measures.end(), measure) == measures.end()) {
      measures.push_back(measure);
    }
  }
  if (targets.empty()) return "";

  std::vector<std::size_t> widths;
  widths.reserve(targets.size());
  for (const auto& t : targets) widths.push_back(std::max<std::size_t>(t.size(), 1) + 2);

  std::ostringstream out;
  out << mode << " fairness\n";
  out << "      ";  // measure column
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out << std::string(widths[i] - targets[i].size(), ' ') << targets[i];
  }
  out << '\n';
  for (const auto& measure : measures) {
    out << measure << std::string(6 - std::min<std::size_t>(6, measure.size()), ' ');
    for (std::size_t i = 0; i < targets.size(); ++i) {
      char cell = '-';
      for (const auto& rec : report.at("records")) {
        if (rec.at("mode") == mode && rec.at("target") == targets[i] &&
            rec.at("measure") == measure) {
          cell = rec.at("unfair").get<bool>() ? 'X'
                 : rec.at("applicable").get<bool>() ? '.'
                                                    : '-';
        }
      }
      out << std::string(widths[i] - 1, ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_grid(const json& report) {
  std::string single = render_mode_grid(report, "single");
  std::string pairwise = render_mode_grid(report, "pairwise");
  if (single.empty()) return pairwise;
  if (pairwise.empty()) return single;
  return single + "\n" + pairwise;
}

std::string render_grid(const AuditReport& report, const GroupUniverse& universe) {
  return render_grid(report_to_json(report, universe));
}

json sweep_to_json(const SweepResult& sweep, bool include_mean_abs) {
  json doc;
  doc["schema"] = "emaudit-sweep-v1";
  doc["measure"] = std::string(measure_name(sweep.measure));
  doc["thresholds"] = sweep.thresholds;
  json points = json::array();
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    const auto& p = sweep.points[i];
    counts.push_back(p.unfair_groups);
    points.push_back({{"threshold", sweep.thresholds[i]},
                      {"unfair_groups", p.unfair_groups},
                      {"utility", opt(p.overall_utility)}});
  }
  doc["points"] = std::move(points);
  json sensitivity;
  if (counts.size() >= 2) {
    sensitivity["l2"] = sensitivity_l2(counts);
    if (include_mean_abs) sensitivity["mean_abs"] = sensitivity_mean_abs(counts);
  } else {
    sensitivity["l2"] = nullptr;
  }
  doc["sensitivity"] = std::move(sensitivity);
  doc["notes"] = json::array({
      "sensitivity.l2 is the l2 norm of adjacent differences in the number of "
      "unfair groups across the threshold grid",
  });
  return doc;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  std::vector<std::string> header = {"measure"};
  for (double t : sweep.thresholds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", t);
    header.emplace_back(buf);
  }
  csv::write_row(out, header);

  std::vector<std::string> row = {std::string(measure_name(sweep.measure))};
  for (const auto& p : sweep.points) {
    std::string cell = std::to_string(p.unfair_groups) + ":";
    cell += p.overall_utility ? two_decimals(p.overall_utility) : "NA";
    row.push_back(cell);
  }
  csv::write_row(out, row);
}

}  // namespace emaudit
