#include "emaudit/audit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string_view>
#include <thread>

#include "emaudit/errors.hpp"

namespace emaudit {

std::string_view disparity_op_name(DisparityOp op) {
  return op == DisparityOp::Sub ? "sub" : "div";
}

std::string_view convention_name(Convention c) {
  return c == Convention::Equation ? "eq" : "table";
}

std::string_view baseline_name(BaselineKind b) {
  return b == BaselineKind::Overall ? "overall" : "complement";
}

double disparity_sub(double baseline_p, double group_p, Direction direction) {
  switch (direction) {
    case Direction::HigherBetter: return std::max(0.0, baseline_p - group_p);
    case Direction::LowerBetter: return std::max(0.0, group_p - baseline_p);
    case Direction::Symmetric: return std::abs(baseline_p - group_p);
  }
  return 0.0;
}

std::optional<double> disparity_div(double baseline_p, double group_p, Direction direction) {
  switch (direction) {
    case Direction::HigherBetter:
      if (baseline_p == 0.0) return std::nullopt;
      return std::max(0.0, 1.0 - group_p / baseline_p);
    case Direction::LowerBetter:
      if (group_p == 0.0) return std::nullopt;
      return std::max(0.0, 1.0 - baseline_p / group_p);
    case Direction::Symmetric:
      if (baseline_p == 0.0) return std::nullopt;
      return std::abs(1.0 - group_p / baseline_p);
  }
  return std::nullopt;
}

double pair_gap(double protected_p, double other_p, Direction direction, DisparityOp op) {
  if (op == DisparityOp::Sub) {
    switch (direction) {
      case Direction::HigherBetter: return other_p - protected_p;
      case Direction::LowerBetter: return protected_p - other_p;
      case Direction::Symmetric: return std::abs(other_p - protected_p);
    }
  }
  switch (direction) {
    case Direction::HigherBetter:
      if (protected_p == 0.0) throw UndefinedRatio();
      return other_p / protected_p - 1.0;
    case Direction::LowerBetter:
      if (other_p == 0.0) throw UndefinedRatio();
      return protected_p / other_p - 1.0;
    case Direction::Symmetric: {
      double lo = std::min(protected_p, other_p);
      double hi = std::max(protected_p, other_p);
      if (lo == 0.0) throw UndefinedRatio();
      return hi / lo - 1.0;
    }
  }
  throw UndefinedRatio();
}

namespace {

// Signed gap fraction with a positive denominator. Flags compare these
// against tau exactly, so a disparity that lands precisely on the threshold
// never flips on floating-point rounding.
struct GapFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::optional<GapFraction> rational_gap(const Fraction& baseline, const Fraction& group,
                                        Direction direction, const DisparityConfig& cfg) {
  if (!baseline.defined() || !group.defined()) return std::nullopt;
  const std::int64_t gn = group.num, gd = group.den;
  const std::int64_t bn = baseline.num, bd = baseline.den;
  auto clamp0 = [](GapFraction g) { return g.num < 0 ? GapFraction{0, 1} : g; };
  auto abs0 = [](GapFraction g) { return GapFraction{std::abs(g.num), g.den}; };

  if (cfg.op == DisparityOp::Sub) {
    GapFraction diff{bn * gd - gn * bd, bd * gd};  // baseline - group
    if (cfg.convention == Convention::Equation) {
      switch (direction) {
        case Direction::HigherBetter: return clamp0(diff);
        case Direction::LowerBetter: return clamp0({-diff.num, diff.den});
        case Direction::Symmetric: return abs0(diff);
      }
    }
    switch (direction) {
      case Direction::HigherBetter: return diff;
      case Direction::LowerBetter: return GapFraction{-diff.num, diff.den};
      case Direction::Symmetric: return abs0(diff);
    }
    return std::nullopt;
  }

  if (cfg.convention == Convention::Equation) {
    switch (direction) {
      case Direction::HigherBetter:
        if (bn == 0) return std::nullopt;
        return clamp0({gd * bn - gn * bd, gd * bn});  // 1 - group/baseline
      case Direction::LowerBetter:
        if (gn == 0) return std::nullopt;
        return clamp0({bd * gn - bn * gd, bd * gn});  // 1 - baseline/group
      case Direction::Symmetric:
        if (bn == 0) return std::nullopt;
        return abs0({gd * bn - gn * bd, gd * bn});
    }
    return std::nullopt;
  }

  switch (direction) {
    case Direction::HigherBetter:
      if (gn == 0) return std::nullopt;
      return GapFraction{bn * gd - gn * bd, gn * bd};  // baseline/group - 1
    case Direction::LowerBetter:
      if (bn == 0) return std::nullopt;
      return GapFraction{gn * bd - bn * gd, bn * gd};  // group/baseline - 1
    case Direction::Symmetric: {
      bool group_larger = gn * bd > bn * gd;
      const Fraction& hi = group_larger ? group : baseline;
      const Fraction& lo = group_larger ? baseline : group;
      if (lo.num == 0) return std::nullopt;
      return GapFraction{hi.num * lo.den - lo.num * hi.den, lo.num * hi.den};
    }
  }
  return std::nullopt;
}

bool rational_greater(const GapFraction& a, const GapFraction& b) {
  return static_cast<__int128>(a.num) * b.den > static_cast<__int128>(b.num) * a.den;
}

// Thresholds come in as decimal text ("0.2", "0.3"); the double cannot hold
// most decimals exactly, so the shortest round-trip decimal recovers the
// value the user actually wrote.
std::optional<GapFraction> tau_as_decimal(double tau) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), tau);
  if (ec != std::errc{}) return std::nullopt;
  std::string_view text(buf, static_cast<std::size_t>(end - buf));

  std::int64_t digits = 0;
  int frac_digits = 0;
  int exp10 = 0;
  bool seen_dot = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      int exponent = 0;
      auto [p, e2] = std::from_chars(text.data() + i + 1, text.data() + text.size(), exponent);
      if (e2 != std::errc{} || p != text.data() + text.size()) return std::nullopt;
      exp10 = exponent;
      break;
    } else if (c >= '0' && c <= '9') {
      if (digits > (INT64_MAX - 9) / 10) return std::nullopt;
      digits = digits * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
    } else {
      return std::nullopt;
    }
  }
  int scale = frac_digits - exp10;  // tau = digits / 10^scale
  GapFraction out{digits, 1};
  for (; scale > 0; --scale) {
    if (out.den > INT64_MAX / 10) return std::nullopt;
    out.den *= 10;
  }
  for (; scale < 0; ++scale) {
    if (out.num > INT64_MAX / 10) return std::nullopt;
    out.num *= 10;
  }
  return out;
}

// Exact num/den > tau comparison.
bool gap_exceeds(const GapFraction& gap, double tau) {
  if (gap.num <= 0) return false;  // tau is non-negative
  if (tau == 0.0) return true;
  if (!std::isfinite(tau)) return false;
  if (auto decimal = tau_as_decimal(tau)) {
    return static_cast<__int128>(gap.num) * decimal->den >
           static_cast<__int128>(decimal->num) * gap.den;
  }
  return gap.value() > tau;  // far outside any boundary-sensitive range
}

struct TargetContext {
  ConfusionMatrix group;
  ConfusionMatrix baseline;
  bool any_legitimate = false;
  bool overlapping = false;  // pairwise only
};

DisparityRecord evaluate_cell(const AuditTarget& target, MeasureId id,
                              const TargetContext& ctx, const DisparityConfig& cfg) {
  DisparityRecord rec;
  rec.target = target;
  rec.measure = id;

  const bool mode_ok = applicable(id, target.mode, ctx.overlapping) ||
                       // EO inherits applicability from its components so the
                       // union rule holds even for non-overlapping pairs where
                       // only the FPR condition carries data.
                       (id == MeasureId::EO &&
                        applicable(MeasureId::FPRP, target.mode, ctx.overlapping));
  if (!mode_ok || !ctx.any_legitimate) return rec;

  if (id == MeasureId::EO) {
    auto [group_tpr, group_fpr] = eo_fractions(ctx.group);
    auto [base_tpr, base_fpr] = eo_fractions(ctx.baseline);
    if (group_tpr.defined()) rec.group_value = group_tpr.value();
    if (base_tpr.defined()) rec.baseline_value = base_tpr.value();
    if (group_fpr.defined()) rec.group_value2 = group_fpr.value();
    if (base_fpr.defined()) rec.baseline_value2 = base_fpr.value();
    bool tpr_side = applicable(MeasureId::TPRP, target.mode, ctx.overlapping);
    auto d_tpr = tpr_side ? rational_gap(base_tpr, group_tpr, Direction::HigherBetter, cfg)
                          : std::nullopt;
    auto d_fpr = rational_gap(base_fpr, group_fpr, Direction::LowerBetter, cfg);
    std::optional<GapFraction> worst;
    if (d_tpr && d_fpr) {
      worst = rational_greater(*d_tpr, *d_fpr) ? *d_tpr : *d_fpr;
    } else if (d_tpr || d_fpr) {
      worst = d_tpr ? d_tpr : d_fpr;
    }
    if (worst) {
      rec.applicable = true;
      rec.disparity = worst->value();
      rec.unfair = gap_exceeds(*worst, cfg.tau);
    }
    return rec;
  }

  Fraction group = measure_fraction(id, ctx.group);
  Fraction baseline = measure_fraction(id, ctx.baseline);
  if (group.defined()) rec.group_value = group.value();
  if (baseline.defined()) rec.baseline_value = baseline.value();
  auto gap = rational_gap(baseline, group, measure_info(id).direction, cfg);
  if (gap) {
    rec.applicable = true;
    rec.disparity = gap->value();
    rec.unfair = gap_exceeds(*gap, cfg.tau);
  }
  return rec;
}

std::size_t thread_budget(std::size_t jobs) {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("EMAUDIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<std::size_t>(v);
  }
  return std::min(n, jobs);
}

// Index-sharded parallel loop; results land in caller-indexed slots so the
// output order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = thread_budget(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

AuditReport run_audit(std::span<const Correspondence> cs,
                      const std::vector<AuditTarget>& targets,
                      const std::vector<MeasureId>& measures, const DisparityConfig& cfg,
                      const GroupUniverse* universe) {
  if (cfg.tau < 0.0) throw ConfigError("audit.tau must be non-negative");
  if (cfg.baseline == BaselineKind::Complement && universe == nullptr) {
    throw ConfigError("the complement baseline needs the group universe");
  }

  // Encoding widths are checked up front so worker threads cannot throw.
  if (!cs.empty()) {
    const std::size_t width = cs.front().groups_left.size();
    for (const auto& c : cs) {
      if (c.groups_left.size() != width || c.groups_right.size() != width) {
        throw LengthMismatch(c.groups_left.size(), width);
      }
    }
    for (const auto& target : targets) {
      if (target.mode == AuditMode::Single) {
        if (target.group.size() != width) throw LengthMismatch(target.group.size(), width);
      } else if (target.pair.first.size() != width || target.pair.second.size() != width) {
        throw LengthMismatch(target.pair.first.size(), width);
      }
    }
  }

  AuditReport report;
  report.config = cfg;
  report.overall = overall_matrix(cs);
  report.overall_rates = rates(report.overall);

  std::vector<TargetContext> contexts(targets.size());
  parallel_for(targets.size(), [&](std::size_t i) {
    const AuditTarget& target = targets[i];
    TargetContext& ctx = contexts[i];
    if (target.mode == AuditMode::Single) {
      ctx.group = accumulate_single(cs, target.group);
      ctx.baseline = cfg.baseline == BaselineKind::Complement
                         ? accumulate_complement(cs, *universe, target.group)
                         : report.overall;
    } else {
      ctx.group = accumulate_pairwise(cs, target.pair);
      ctx.overlapping = pair_overlapping(target.pair, cs);
      ctx.baseline = report.overall;  // complement is undefined for pairs
    }
    // Every legitimate pair contributes at least one count.
    ctx.any_legitimate = ctx.group.total() > 0;
  });

  report.records.reserve(targets.size() * measures.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    bool any_unfair = false;
    for (MeasureId id : measures) {
      DisparityRecord rec = evaluate_cell(targets[i], id, contexts[i], cfg);
      any_unfair = any_unfair || rec.unfair;
      report.records.push_back(std::move(rec));
    }
    if (any_unfair) {
      if (targets[i].mode == AuditMode::Single) {
        report.discriminated_single.push_back(targets[i].group);
      } else {
        report.discriminated_pairwise.push_back(targets[i].pair);
      }
    }
  }
  return report;
}

}  // namespace emaudit
