#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

using emaudit::AuditMode;
using emaudit::AuditTarget;
using emaudit::Correspondence;
using emaudit::DisparityConfig;
using emaudit::DisparityOp;
using emaudit::Convention;
using emaudit::BaselineKind;
using emaudit::GroupEncoding;
using emaudit::GroupUniverse;
using emaudit::MatchLabel;
using emaudit::MeasureId;

namespace {

// Low-level subset test on raw bits, independent of GroupEncoding::contains.
bool subset(const GroupEncoding& sub, const GroupEncoding& super) {
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (sub.test(i) && !super.test(i)) return false;
  }
  return true;
}

bool legit_pair(const Correspondence& c, const AuditTarget& t) {
  const auto& [s, s2] = t.pair;
  return (subset(s, c.groups_left) && subset(s2, c.groups_right)) ||
         (subset(s2, c.groups_left) && subset(s, c.groups_right));
}

int single_sides(const Correspondence& c, const GroupEncoding& g) {
  return (subset(g, c.groups_left) ? 1 : 0) + (subset(g, c.groups_right) ? 1 : 0);
}

// A side is in the complement when it holds some other value of one of the
// target's attributes.
int complement_sides(const Correspondence& c, const GroupEncoding& g,
                     const GroupUniverse& universe) {
  auto in_complement = [&](const GroupEncoding& entity) {
    for (std::size_t bit = 0; bit < g.size(); ++bit) {
      if (!g.test(bit)) continue;
      auto [first, last] = universe.attribute_span(universe.attribute_of(bit));
      for (std::size_t i = first; i < last; ++i) {
        if (!g.test(i) && entity.test(i)) return true;
      }
    }
    return false;
  };
  return (in_complement(c.groups_left) ? 1 : 0) + (in_complement(c.groups_right) ? 1 : 0);
}

enum class Dir { Higher, Lower, Symmetric };

struct EventPair {
  std::function<bool(MatchLabel h, MatchLabel y)> alpha;
  std::function<bool(MatchLabel h, MatchLabel y)> beta;
  Dir dir = Dir::Higher;
};

constexpr auto M = MatchLabel::Match;

EventPair event_pair(MeasureId id) {
  switch (id) {
    case MeasureId::AP:
      return {[](MatchLabel h, MatchLabel y) { return h == y; },
              [](MatchLabel, MatchLabel) { return true; }, Dir::Higher};
    case MeasureId::SP:
      return {[](MatchLabel h, MatchLabel) { return h == M; },
              [](MatchLabel, MatchLabel) { return true; }, Dir::Symmetric};
    case MeasureId::TPRP:
      return {[](MatchLabel h, MatchLabel) { return h == M; },
              [](MatchLabel, MatchLabel y) { return y == M; }, Dir::Higher};
    case MeasureId::FPRP:
      return {[](MatchLabel h, MatchLabel) { return h == M; },
              [](MatchLabel, MatchLabel y) { return y != M; }, Dir::Lower};
    case MeasureId::FNRP:
      return {[](MatchLabel h, MatchLabel) { return h != M; },
              [](MatchLabel, MatchLabel y) { return y == M; }, Dir::Lower};
    case MeasureId::TNRP:
      return {[](MatchLabel h, MatchLabel) { return h != M; },
              [](MatchLabel, MatchLabel y) { return y != M; }, Dir::Higher};
    case MeasureId::PPVP:
      return {[](MatchLabel, MatchLabel y) { return y == M; },
              [](MatchLabel h, MatchLabel) { return h == M; }, Dir::Higher};
    case MeasureId::NPVP:
      return {[](MatchLabel, MatchLabel y) { return y != M; },
              [](MatchLabel h, MatchLabel) { return h != M; }, Dir::Higher};
    case MeasureId::FDRP:
      return {[](MatchLabel, MatchLabel y) { return y != M; },
              [](MatchLabel h, MatchLabel) { return h == M; }, Dir::Lower};
    case MeasureId::FORP:
      return {[](MatchLabel, MatchLabel y) { return y == M; },
              [](MatchLabel h, MatchLabel) { return h != M; }, Dir::Lower};
    case MeasureId::EO:
      throw std::logic_error("EO is handled as a composite");
  }
  throw std::logic_error("unknown measure");
}

bool single_only(MeasureId id) {
  switch (id) {
    case MeasureId::TPRP:
    case MeasureId::FNRP:
    case MeasureId::EO:
    case MeasureId::PPVP:
    case MeasureId::NPVP:
    case MeasureId::FDRP:
    case MeasureId::FORP:
      return true;
    default:
      return false;
  }
}

using WeightFn = std::function<int(const Correspondence&)>;

Frac cond_freq(const std::vector<Correspondence>& cs, const EventPair& events,
               const WeightFn& weight) {
  long long num = 0;
  long long den = 0;
  for (const auto& c : cs) {
    int w = weight(c);
    if (w == 0) continue;
    MatchLabel h = c.decision.value();
    if (!events.beta(h, c.truth)) continue;
    den += w;
    if (events.alpha(h, c.truth)) num += w;
  }
  if (den == 0) return {};
  return {num, den};
}

// Signed rational with positive denominator; magnitudes stay far below the
// 64-bit range at test scales.
struct Rat {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

bool rat_greater(const Rat& a, const Rat& b) {
  return a.num * b.den > b.num * a.den;
}

Rat rat_max(const Rat& a, const Rat& b) { return rat_greater(a, b) ? a : b; }

// The rational disparity driving the unfairness comparison; nullopt when
// undefined under the configured operator.
std::optional<Rat> rational_gap(const Frac& baseline, const Frac& group, Dir dir,
                                const DisparityConfig& cfg) {
  const long long gn = group.num, gd = group.den;
  const long long bn = baseline.num, bd = baseline.den;
  auto clamp0 = [](Rat r) { return r.num < 0 ? Rat{0, 1} : r; };
  auto abs_of = [](Rat r) { return Rat{std::llabs(r.num), r.den}; };

  if (cfg.op == DisparityOp::Sub) {
    Rat diff{bn * gd - gn * bd, bd * gd};  // baseline - group
    if (cfg.convention == Convention::Equation) {
      if (dir == Dir::Higher) return clamp0(diff);
      if (dir == Dir::Lower) return clamp0(Rat{-diff.num, diff.den});
      return abs_of(diff);
    }
    if (dir == Dir::Higher) return diff;
    if (dir == Dir::Lower) return Rat{-diff.num, diff.den};
    return abs_of(diff);
  }

  if (cfg.convention == Convention::Equation) {
    if (dir == Dir::Higher) {
      if (bn == 0) return std::nullopt;
      return clamp0(Rat{gd * bn - gn * bd, gd * bn});  // 1 - g/b
    }
    if (dir == Dir::Lower) {
      if (gn == 0) return std::nullopt;
      return clamp0(Rat{bd * gn - bn * gd, bd * gn});  // 1 - b/g
    }
    if (bn == 0) return std::nullopt;
    return abs_of(Rat{gd * bn - gn * bd, gd * bn});
  }

  if (dir == Dir::Higher) {
    if (gn == 0) return std::nullopt;
    return Rat{bn * gd - gn * bd, gn * bd};  // b/g - 1
  }
  if (dir == Dir::Lower) {
    if (bn == 0) return std::nullopt;
    return Rat{gn * bd - bn * gd, bn * gd};  // g/b - 1
  }
  // symmetric: larger over smaller, minus one
  bool group_larger = gn * bd > bn * gd;
  const Frac& hi = group_larger ? group : baseline;
  const Frac& lo = group_larger ? baseline : group;
  if (lo.num == 0) return std::nullopt;
  return Rat{hi.num * lo.den - lo.num * hi.den, lo.num * hi.den};
}

Rat tau_as_rational(double tau) {
  // Test configurations stick to twentieths so the comparison stays exact.
  long long twentieths = std::llround(tau * 20.0);
  if (std::abs(tau * 20.0 - static_cast<double>(twentieths)) > 1e-9) {
    throw std::logic_error("reference audit needs tau in twentieths");
  }
  return {twentieths, 20};
}

}  // namespace

std::vector<RefRecord> reference_audit(const std::vector<Correspondence>& cs,
                                       const std::vector<AuditTarget>& targets,
                                       const std::vector<MeasureId>& measures,
                                       const DisparityConfig& cfg,
                                       const GroupUniverse& universe) {
  const Rat tau = tau_as_rational(cfg.tau);
  std::vector<RefRecord> out;

  for (const auto& target : targets) {
    WeightFn group_weight;
    WeightFn baseline_weight;
    bool overlapping = false;
    if (target.mode == AuditMode::Single) {
      group_weight = [&](const Correspondence& c) { return single_sides(c, target.group); };
      baseline_weight = cfg.baseline == BaselineKind::Complement
                            ? WeightFn([&](const Correspondence& c) {
                                return complement_sides(c, target.group, universe);
                              })
                            : WeightFn([](const Correspondence&) { return 1; });
    } else {
      group_weight = [&](const Correspondence& c) { return legit_pair(c, target) ? 1 : 0; };
      baseline_weight = [](const Correspondence&) { return 1; };
      for (std::size_t i = 0; i < target.pair.first.size() && !overlapping; ++i) {
        overlapping = target.pair.first.test(i) && target.pair.second.test(i);
      }
      for (const auto& c : cs) {
        if (overlapping) break;
        if (c.truth == MatchLabel::Match && legit_pair(c, target)) overlapping = true;
      }
    }

    bool any_legitimate = false;
    for (const auto& c : cs) {
      if (group_weight(c) > 0) {
        any_legitimate = true;
        break;
      }
    }

    auto mode_ok = [&](MeasureId id) {
      if (target.mode == AuditMode::Single) return true;
      return !single_only(id) || overlapping;
    };

    for (MeasureId id : measures) {
      RefRecord rec;
      if (id == MeasureId::EO) {
        // Union of the two conditions; the FPR side never needs overlap.
        if (any_legitimate) {
          EventPair tpr = event_pair(MeasureId::TPRP);
          EventPair fpr = event_pair(MeasureId::FPRP);
          std::optional<Rat> best;
          bool tpr_side = mode_ok(MeasureId::TPRP);
          Frac g_tpr = cond_freq(cs, tpr, group_weight);
          Frac b_tpr = cond_freq(cs, tpr, baseline_weight);
          Frac g_fpr = cond_freq(cs, fpr, group_weight);
          Frac b_fpr = cond_freq(cs, fpr, baseline_weight);
          if (g_tpr.defined()) rec.group_value = g_tpr;
          if (b_tpr.defined()) rec.baseline_value = b_tpr;
          if (tpr_side && g_tpr.defined() && b_tpr.defined()) {
            best = rational_gap(b_tpr, g_tpr, Dir::Higher, cfg);
          }
          if (g_fpr.defined() && b_fpr.defined()) {
            auto d = rational_gap(b_fpr, g_fpr, Dir::Lower, cfg);
            if (d && best) {
              best = rat_max(*best, *d);
            } else if (d) {
              best = d;
            }
          }
          if (best) {
            rec.applicable = true;
            rec.disparity = best->value();
            rec.unfair = rat_greater(*best, tau);
          }
        }
        out.push_back(rec);
        continue;
      }

      if (!mode_ok(id) || !any_legitimate) {
        out.push_back(rec);
        continue;
      }
      EventPair events = event_pair(id);
      Frac group = cond_freq(cs, events, group_weight);
      Frac baseline = cond_freq(cs, events, baseline_weight);
      if (group.defined()) rec.group_value = group;
      if (baseline.defined()) rec.baseline_value = baseline;
      if (group.defined() && baseline.defined()) {
        auto d = rational_gap(baseline, group, events.dir, cfg);
        if (d) {
          rec.applicable = true;
          rec.disparity = d->value();
          rec.unfair = rat_greater(*d, tau);
        }
      }
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace oracle
