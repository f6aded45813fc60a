#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emaudit/audit.hpp"

namespace emaudit {

struct SweepPoint {
  std::size_t unfair_groups = 0;
  std::optional<double> overall_utility;  // the swept measure's overall rate
  AuditReport report;
};

struct SweepResult {
  MeasureId measure = MeasureId::TPRP;
  std::vector<double> thresholds;
  std::vector<SweepPoint> points;
};

// Re-derives decisions from scores at every threshold (strict greater) and
// audits the given targets for one measure. Thresholds must be strictly
// increasing and within [0,1]; every correspondence needs a score.
SweepResult sweep(std::span<const Correspondence> cs, const std::vector<double>& thresholds,
                  const std::vector<AuditTarget>& targets, MeasureId measure,
                  const DisparityConfig& cfg, const GroupUniverse* universe = nullptr);

// Threshold-sensitivity score: the l2 distance over changes in the number
// of unfair groups between adjacent thresholds.
double sensitivity_l2(std::span<const std::size_t> unfair_counts);

// Alternative aggregation: mean absolute adjacent difference.
double sensitivity_mean_abs(std::span<const std::size_t> unfair_counts);

// The default sweep grid: 0.30 to 0.90 in steps of 0.05.
std::vector<double> default_threshold_grid();

}  // namespace emaudit
