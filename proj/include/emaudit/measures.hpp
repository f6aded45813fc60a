#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "emaudit/confusion.hpp"
#include "emaudit/dataset.hpp"

namespace emaudit {

enum class MeasureId { AP, SP, TPRP, FPRP, FNRP, TNRP, EO, PPVP, NPVP, FDRP, FORP };

enum class Direction { HigherBetter, LowerBetter, Symmetric };

struct Measure {
  MeasureId id;
  Direction direction;
  // True for measures that condition on true matches or on match
  // predictions; for non-overlapping group pairs those events carry no
  // cross-group mass, so the measure only applies to single fairness and to
  // overlapping pairs.
  bool single_only;
};

const std::vector<Measure>& all_measures();
const Measure& measure_info(MeasureId id);
std::string_view measure_name(MeasureId id);
std::optional<MeasureId> parse_measure(std::string_view token);

// Exact integer fraction of counts; den == 0 encodes "undefined". Audit
// unfairness decisions run on these so threshold comparisons are exact.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return den != 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// The measure's probability as a count fraction (EO excluded, see
// eo_fractions).
Fraction measure_fraction(MeasureId id, const ConfusionMatrix& m);

// EO's two conditions: (match | true match) and (match | true non-match).
std::pair<Fraction, Fraction> eo_fractions(const ConfusionMatrix& m);

// The measure's probability read off a confusion matrix; absent when the
// underlying rate is undefined. EO is a composite of two rates, see
// eo_value.
std::optional<double> measure_value(MeasureId id, const ConfusionMatrix& m);

// EO's two conditions as doubles.
std::pair<std::optional<double>, std::optional<double>> eo_value(const ConfusionMatrix& m);

// Applicability rule: every measure applies to single fairness; in pairwise
// mode, single_only measures require overlapping groups.
bool applicable(MeasureId id, AuditMode mode, bool pair_overlapping);

// A pair counts as overlapping when the two encodings share a set bit or
// the data holds at least one true match legitimate for the pair.
bool pair_overlapping(const std::pair<GroupEncoding, GroupEncoding>& pair,
                      std::span<const Correspondence> cs);

}  // namespace emaudit
