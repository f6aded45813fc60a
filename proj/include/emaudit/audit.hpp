#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emaudit/confusion.hpp"
#include "emaudit/dataset.hpp"
#include "emaudit/groups.hpp"
#include "emaudit/measures.hpp"

namespace emaudit {

enum class DisparityOp { Sub, Div };
enum class Convention { Equation, Table };
enum class BaselineKind { Overall, Complement };

std::string_view disparity_op_name(DisparityOp op);
std::string_view convention_name(Convention c);
std::string_view baseline_name(BaselineKind b);

struct DisparityConfig {
  double tau = 0.2;
  DisparityOp op = DisparityOp::Sub;
  Convention convention = Convention::Equation;
  BaselineKind baseline = BaselineKind::Overall;
};

// Equation convention: clamped-at-zero gap of the group probability against
// the baseline, oriented by the measure's preferred direction.
double disparity_sub(double baseline_p, double group_p, Direction direction);

// Equation convention, ratio form: 1 minus the (direction-oriented) ratio,
// clamped at zero; absent when the denominator is zero.
std::optional<double> disparity_div(double baseline_p, double group_p, Direction direction);

// Table convention: the signed group-vs-group gap as printed in reports —
// plain difference for Sub, ratio-minus-one for Div. Negative values mean
// the audited (protected) group is advantaged. Throws UndefinedRatio when
// the Div denominator is zero.
double pair_gap(double protected_p, double other_p, Direction direction, DisparityOp op);

struct DisparityRecord {
  AuditTarget target;
  MeasureId measure = MeasureId::AP;
  std::optional<double> group_value;
  std::optional<double> baseline_value;
  std::optional<double> disparity;
  // EO carries its two conditions; disparity above is the worse of the two.
  std::optional<double> group_value2;
  std::optional<double> baseline_value2;
  bool applicable = false;
  bool unfair = false;
};

struct AuditReport {
  DisparityConfig config;
  std::vector<DisparityRecord> records;  // target-major, measure-minor order
  std::vector<GroupEncoding> discriminated_single;
  std::vector<std::pair<GroupEncoding, GroupEncoding>> discriminated_pairwise;
  ConfusionMatrix overall;
  RateSet overall_rates;
};

// Audits every (target, measure) cell: legitimacy-filter, accumulate,
// evaluate the measure on group and baseline, compute the configured
// disparity and flag the cell when it exceeds tau. Decisions must be
// resolved beforehand (with_decisions). Targets with no legitimate
// correspondences yield inapplicable records rather than an error.
//
// The Complement baseline needs the universe to locate each target's
// attribute slice; it is meaningful for single targets over exclusive
// attributes. Pairwise targets fall back to the Overall baseline.
AuditReport run_audit(std::span<const Correspondence> cs,
                      const std::vector<AuditTarget>& targets,
                      const std::vector<MeasureId>& measures, const DisparityConfig& cfg,
                      const GroupUniverse* universe = nullptr);

}  // namespace emaudit
