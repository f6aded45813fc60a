#include "emaudit/measures.hpp"

namespace emaudit {

const std::vector<Measure>& all_measures() {
  static const std::vector<Measure> table = {
      {MeasureId::AP, Direction::HigherBetter, false},
      {MeasureId::SP, Direction::Symmetric, false},
      {MeasureId::TPRP, Direction::HigherBetter, true},
      {MeasureId::FPRP, Direction::LowerBetter, false},
      {MeasureId::FNRP, Direction::LowerBetter, true},
      {MeasureId::TNRP, Direction::HigherBetter, false},
      {MeasureId::EO, Direction::HigherBetter, true},
      {MeasureId::PPVP, Direction::HigherBetter, true},
      {MeasureId::NPVP, Direction::HigherBetter, true},
      {MeasureId::FDRP, Direction::LowerBetter, true},
      {MeasureId::FORP, Direction::LowerBetter, true},
  };
  return table;
}

const Measure& measure_info(MeasureId id) {
  for (const auto& m : all_measures()) {
    if (m.id == id) return m;
  }
  return all_measures().front();  // unreachable for valid ids
}

std::string_view measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::AP: return "AP";
    case MeasureId::SP: return "SP";
    case MeasureId::TPRP: return "TPRP";
    case MeasureId::FPRP: return "FPRP";
    case MeasureId::FNRP: return "FNRP";
    case MeasureId::TNRP: return "TNRP";
    case MeasureId::EO: return "EO";
    case MeasureId::PPVP: return "PPVP";
    case MeasureId::NPVP: return "NPVP";
    case MeasureId::FDRP: return "FDRP";
    case MeasureId::FORP: return "FORP";
  }
  return "?";
}

std::optional<MeasureId> parse_measure(std::string_view token) {
  for (const auto& m : all_measures()) {
    if (measure_name(m.id) == token) return m.id;
  }
  return std::nullopt;
}

namespace {

Fraction frac(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return {};
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

std::optional<double> as_value(const Fraction& f) {
  if (!f.defined()) return std::nullopt;
  return f.value();
}

}  // namespace

Fraction measure_fraction(MeasureId id, const ConfusionMatrix& m) {
  switch (id) {
    case MeasureId::AP: return frac(m.tp + m.tn, m.total());
    case MeasureId::SP: return frac(m.tp + m.fp, m.total());
    case MeasureId::TPRP: return frac(m.tp, m.tp + m.fn);
    case MeasureId::FPRP: return frac(m.fp, m.fp + m.tn);
    case MeasureId::FNRP: return frac(m.fn, m.tp + m.fn);
    case MeasureId::TNRP: return frac(m.tn, m.fp + m.tn);
    case MeasureId::EO: return {};  // composite, see eo_fractions
    case MeasureId::PPVP: return frac(m.tp, m.tp + m.fp);
    case MeasureId::NPVP: return frac(m.tn, m.tn + m.fn);
    case MeasureId::FDRP: return frac(m.fp, m.tp + m.fp);
    case MeasureId::FORP: return frac(m.fn, m.tn + m.fn);
  }
  return {};
}

std::pair<Fraction, Fraction> eo_fractions(const ConfusionMatrix& m) {
  return {frac(m.tp, m.tp + m.fn), frac(m.fp, m.fp + m.tn)};
}

std::optional<double> measure_value(MeasureId id, const ConfusionMatrix& m) {
  if (id == MeasureId::EO) return std::nullopt;
  return as_value(measure_fraction(id, m));
}

std::pair<std::optional<double>, std::optional<double>> eo_value(const ConfusionMatrix& m) {
  auto [tpr, fpr] = eo_fractions(m);
  return {as_value(tpr), as_value(fpr)};
}

bool applicable(MeasureId id, AuditMode mode, bool pair_overlapping) {
  if (mode == AuditMode::Single) return true;
  return !measure_info(id).single_only || pair_overlapping;
}

bool pair_overlapping(const std::pair<GroupEncoding, GroupEncoding>& pair,
                      std::span<const Correspondence> cs) {
  if (pair.first.intersects(pair.second)) return true;
  for (const auto& c : cs) {
    if (c.truth == MatchLabel::Match && legitimate_pairwise(c, pair)) return true;
  }
  return false;
}

}  // namespace emaudit
