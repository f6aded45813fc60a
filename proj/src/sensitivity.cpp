#include "emaudit/sensitivity.hpp"

#include <cmath>

#include "emaudit/errors.hpp"

namespace emaudit {

SweepResult sweep(std::span<const Correspondence> cs, const std::vector<double>& thresholds,
                  const std::vector<AuditTarget>& targets, MeasureId measure,
                  const DisparityConfig& cfg, const GroupUniverse* universe) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0.0 || thresholds[i] > 1.0) {
      throw ConfigError("sweep thresholds must lie in [0,1]");
    }
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw ConfigError("sweep thresholds must be strictly increasing");
    }
  }
  for (const auto& c : cs) {
    if (!c.score) {
      throw MissingScore("correspondence (" + c.id_left + ", " + c.id_right +
                         ") has no score; sweeps need scored predictions");
    }
  }

  SweepResult result;
  result.measure = measure;
  result.thresholds = thresholds;
  std::vector<MeasureId> measures = {measure};
  std::vector<Correspondence> scratch(cs.begin(), cs.end());
  for (double t : thresholds) {
    for (auto& c : scratch) {
      c.decision = *c.score > t ? MatchLabel::Match : MatchLabel::NonMatch;
    }
    SweepPoint point;
    point.report = run_audit(scratch, targets, measures, cfg, universe);
    point.unfair_groups = point.report.discriminated_single.size() +
                          point.report.discriminated_pairwise.size();
    // EO has no single overall rate; its TPR condition stands in.
    point.overall_utility = measure == MeasureId::EO
                                ? eo_value(point.report.overall).first
                                : measure_value(measure, point.report.overall);
    result.points.push_back(std::move(point));
  }
  return result;
}

double sensitivity_l2(std::span<const std::size_t> unfair_counts) {
  if (unfair_counts.size() < 2) throw TooFewThresholds();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < unfair_counts.size(); ++i) {
    double step = static_cast<double>(unfair_counts[i + 1]) -
                  static_cast<double>(unfair_counts[i]);
    sum += step * step;
  }
  return std::sqrt(sum);
}

double sensitivity_mean_abs(std::span<const std::size_t> unfair_counts) {
  if (unfair_counts.size() < 2) throw TooFewThresholds();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < unfair_counts.size(); ++i) {
    sum += std::abs(static_cast<double>(unfair_counts[i + 1]) -
                    static_cast<double>(unfair_counts[i]));
  }
  return sum / static_cast<double>(unfair_counts.size() - 1);
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int i = 30; i <= 90; i += 5) {
    grid.push_back(static_cast<double>(i) / 100.0);
  }
  return grid;
}

}  // namespace emaudit
