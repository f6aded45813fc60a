#include "emaudit/confusion.hpp"

#include "emaudit/errors.hpp"

namespace emaudit {

Outcome classify(MatchLabel decision, MatchLabel truth) {
  if (decision == MatchLabel::Match) {
    return truth == MatchLabel::Match ? Outcome::TP : Outcome::FP;
  }
  return truth == MatchLabel::Match ? Outcome::FN : Outcome::TN;
}

Outcome classify(const Correspondence& c) {
  if (!c.decision) {
    throw MissingDecision("correspondence (" + c.id_left + ", " + c.id_right +
                          ") has no resolved decision");
  }
  return classify(*c.decision, c.truth);
}

void ConfusionMatrix::add(Outcome outcome, std::uint64_t weight) {
  switch (outcome) {
    case Outcome::TP: tp += weight; break;
    case Outcome::FP: fp += weight; break;
    case Outcome::FN: fn += weight; break;
    case Outcome::TN: tn += weight; break;
  }
}

ConfusionMatrix accumulate_single(std::span<const Correspondence> cs, const GroupEncoding& g) {
  ConfusionMatrix m;
  for (const auto& c : cs) {
    std::uint64_t sides = (g.contains(c.groups_left) ? 1u : 0u) +
                          (g.contains(c.groups_right) ? 1u : 0u);
    if (sides == 0) continue;
    m.add(classify(c), sides);
  }
  return m;
}

ConfusionMatrix accumulate_pairwise(std::span<const Correspondence> cs,
                                    const std::pair<GroupEncoding, GroupEncoding>& pair) {
  ConfusionMatrix m;
  for (const auto& c : cs) {
    if (legitimate_pairwise(c, pair)) m.add(classify(c));
  }
  return m;
}

ConfusionMatrix overall_matrix(std::span<const Correspondence> cs) {
  ConfusionMatrix m;
  for (const auto& c : cs) {
    m.add(classify(c));
  }
  return m;
}

GroupEncoding complement_mask(const GroupUniverse& universe, const GroupEncoding& g) {
  if (g.size() != universe.size()) throw LengthMismatch(g.size(), universe.size());
  GroupEncoding mask(universe.size());
  for (std::size_t bit : g.set_bits()) {
    auto [first, last] = universe.attribute_span(universe.attribute_of(bit));
    for (std::size_t i = first; i < last; ++i) {
      if (!g.test(i)) mask.set(i);
    }
  }
  return mask;
}

ConfusionMatrix accumulate_complement(std::span<const Correspondence> cs,
                                      const GroupUniverse& universe, const GroupEncoding& g) {
  GroupEncoding mask = complement_mask(universe, g);
  ConfusionMatrix m;
  for (const auto& c : cs) {
    std::uint64_t sides = (mask.intersects(c.groups_left) ? 1u : 0u) +
                          (mask.intersects(c.groups_right) ? 1u : 0u);
    if (sides == 0) continue;
    m.add(classify(c), sides);
  }
  return m;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

RateSet rates(const ConfusionMatrix& m) {
  RateSet r;
  r.tpr = ratio(m.tp, m.tp + m.fn);
  r.fnr = ratio(m.fn, m.tp + m.fn);
  r.fpr = ratio(m.fp, m.fp + m.tn);
  r.tnr = ratio(m.tn, m.fp + m.tn);
  r.ppv = ratio(m.tp, m.tp + m.fp);
  r.fdr = ratio(m.fp, m.tp + m.fp);
  r.npv = ratio(m.tn, m.tn + m.fn);
  r.forr = ratio(m.fn, m.tn + m.fn);
  r.accuracy = ratio(m.tp + m.tn, m.total());
  r.positive_rate = ratio(m.tp + m.fp, m.total());
  r.f1 = ratio(2 * m.tp, 2 * m.tp + m.fp + m.fn);
  return r;
}

}  // namespace emaudit
