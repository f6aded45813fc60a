#include <doctest.h>

#include <random>

#include "emaudit/measures.hpp"

using namespace emaudit;

TEST_CASE("measure table matches the published applicability split") {
  REQUIRE(all_measures().size() == 11);
  for (const auto& m : all_measures()) {
    bool expected_single_only =
        m.id == MeasureId::TPRP || m.id == MeasureId::FNRP || m.id == MeasureId::EO ||
        m.id == MeasureId::PPVP || m.id == MeasureId::NPVP || m.id == MeasureId::FDRP ||
        m.id == MeasureId::FORP;
    CHECK(m.single_only == expected_single_only);
  }
  CHECK(measure_info(MeasureId::SP).direction == Direction::Symmetric);
  CHECK(measure_info(MeasureId::FDRP).direction == Direction::LowerBetter);
  CHECK(measure_info(MeasureId::PPVP).direction == Direction::HigherBetter);
  CHECK(parse_measure("TPRP") == MeasureId::TPRP);
  CHECK_FALSE(parse_measure("tprp").has_value());
}

TEST_CASE("measure values read the matching rate") {
  // ppv = 3/100 reproduces a 0.03-precision matcher
  ConfusionMatrix nb{3, 97, 0, 0};
  CHECK(*measure_value(MeasureId::PPVP, nb) == 0.03);

  CHECK_FALSE(measure_value(MeasureId::TPRP, {}).has_value());

  ConfusionMatrix perfect{5, 0, 0, 5};
  auto [tpr, fpr] = eo_value(perfect);
  CHECK(*tpr == 1.0);
  CHECK(*fpr == 0.0);

  ConfusionMatrix m{2, 2, 1, 1};
  CHECK(*measure_value(MeasureId::AP, m) == 0.5);
  CHECK(*measure_value(MeasureId::SP, m) == doctest::Approx(4.0 / 6.0));
  CHECK(*measure_value(MeasureId::FNRP, m) == doctest::Approx(1.0 / 3.0));
  CHECK(*measure_value(MeasureId::TNRP, m) == doctest::Approx(1.0 / 3.0));
  CHECK(*measure_value(MeasureId::NPVP, m) == 0.5);
  CHECK(*measure_value(MeasureId::FORP, m) == 0.5);
}

TEST_CASE("accuracy complements the misclassification rate") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    ConfusionMatrix m{rng() % 40 + 1, rng() % 40, rng() % 40, rng() % 40};
    double mis = static_cast<double>(m.fp + m.fn) / static_cast<double>(m.total());
    CHECK(*measure_value(MeasureId::AP, m) == doctest::Approx(1.0 - mis).epsilon(1e-12));
  }
}

TEST_CASE("complement measure pairs sum to one when defined") {
  std::mt19937_64 rng(71);
  const std::pair<MeasureId, MeasureId> pairs[] = {
      {MeasureId::TPRP, MeasureId::FNRP},
      {MeasureId::PPVP, MeasureId::FDRP},
      {MeasureId::NPVP, MeasureId::FORP},
      {MeasureId::TNRP, MeasureId::FPRP},
  };
  for (int trial = 0; trial < 1000; ++trial) {
    ConfusionMatrix m{rng() % 30, rng() % 30, rng() % 30, rng() % 30};
    for (auto [a, b] : pairs) {
      auto va = measure_value(a, m);
      auto vb = measure_value(b, m);
      REQUIRE(va.has_value() == vb.has_value());
      if (va) CHECK(*va + *vb == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("applicability follows the single-only rules") {
  CHECK_FALSE(applicable(MeasureId::TPRP, AuditMode::Pairwise, false));
  CHECK(applicable(MeasureId::AP, AuditMode::Pairwise, false));
  CHECK(applicable(MeasureId::PPVP, AuditMode::Single, false));
  CHECK(applicable(MeasureId::TPRP, AuditMode::Pairwise, true));
  CHECK(applicable(MeasureId::SP, AuditMode::Pairwise, false));
  CHECK(applicable(MeasureId::FPRP, AuditMode::Pairwise, false));
  CHECK_FALSE(applicable(MeasureId::EO, AuditMode::Pairwise, false));
}

TEST_CASE("pair overlap comes from shared bits or cross-group matches") {
  GroupUniverse u({{"genre", AttributeKind::Setwise, {"a", "b", "c"}}});
  GroupEncoding ab = u.encode({"a", "b"});
  GroupEncoding bc = u.encode({"b", "c"});
  GroupEncoding a = u.encode({"a"});
  GroupEncoding c = u.encode({"c"});

  CHECK(pair_overlapping({ab, bc}, {}));
  CHECK_FALSE(pair_overlapping({a, c}, {}));

  Correspondence cross;
  cross.groups_left = a;
  cross.groups_right = c;
  cross.decision = MatchLabel::NonMatch;
  cross.truth = MatchLabel::Match;
  std::vector<Correspondence> cs = {cross};
  CHECK(pair_overlapping({a, c}, cs));

  cs[0].truth = MatchLabel::NonMatch;
  CHECK_FALSE(pair_overlapping({a, c}, cs));
}
