#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "emaudit/dataset.hpp"
#include "emaudit/groups.hpp"

namespace emaudit {

enum class Outcome { TP, FP, FN, TN };

// Requires both labels; decision comes pre-resolved (see with_decisions).
Outcome classify(MatchLabel decision, MatchLabel truth);
Outcome classify(const Correspondence& c);  // throws MissingDecision

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  void add(Outcome outcome, std::uint64_t weight = 1);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Single-fairness accumulation: each legitimate pair adds 2 when both sides
// belong to the group, otherwise 1 (the per-side counting rule).
ConfusionMatrix accumulate_single(std::span<const Correspondence> cs, const GroupEncoding& g);

// Pairwise accumulation: each legitimate pair adds exactly 1, the pair
// itself being the counting unit.
ConfusionMatrix accumulate_pairwise(std::span<const Correspondence> cs,
                                    const std::pair<GroupEncoding, GroupEncoding>& pair);

// Population matrix: one increment per correspondence.
ConfusionMatrix overall_matrix(std::span<const Correspondence> cs);

// Single-fairness accumulation against the complement of a subgroup within
// its own attribute(s): a side counts when it holds any domain value of the
// subgroup's attributes other than the subgroup's own bits.
ConfusionMatrix accumulate_complement(std::span<const Correspondence> cs,
                                      const GroupUniverse& universe, const GroupEncoding& g);

// The complement membership mask used above.
GroupEncoding complement_mask(const GroupUniverse& universe, const GroupEncoding& g);

// Empirical rates; a field is absent when its denominator is zero. Each
// value is a single division of exact integer counts.
struct RateSet {
  std::optional<double> tpr, fpr, fnr, tnr;
  std::optional<double> ppv, npv, fdr, forr;
  std::optional<double> accuracy, positive_rate, f1;

  std::optional<double> precision() const { return ppv; }
  std::optional<double> recall() const { return tpr; }
};

RateSet rates(const ConfusionMatrix& m);

}  // namespace emaudit
