#include <doctest.h>

#include <random>

#include "emaudit/errors.hpp"
#include "emaudit/matchers.hpp"

using namespace emaudit;

namespace {

// Reference edit distance, plain full-matrix DP.
std::size_t editdist_ref(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

std::string random_word(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  std::string out;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    out += static_cast<char>('a' + rng() % alphabet);
  }
  return out;
}

}  // namespace

TEST_CASE("levenshtein agrees with the DP reference") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string a = random_word(rng, 8, 3);
    std::string b = random_word(rng, 8, 3);
    CHECK(levenshtein(a, b) == editdist_ref(a, b));
  }
}

TEST_CASE("similarity features hit the published example strings") {
  // lowercasing folds the case difference, leaving one substitution
  CHECK(similarity(Feature::LevenshteinNorm, "LinLin Shen", "Linlin phen") ==
        doctest::Approx(1.0 - 1.0 / 11.0));
  SimilarityOptions cs;
  cs.case_insensitive = false;
  CHECK(similarity(Feature::LevenshteinNorm, "LinLin Shen", "Linlin phen", cs) ==
        doctest::Approx(1.0 - 2.0 / 11.0));

  CHECK(similarity(Feature::Exact, "VLDB", "VLDB") == 1.0);
  CHECK(similarity(Feature::JaccardTokens, "a b", "c d") == 0.0);
  CHECK(similarity(Feature::JaccardTokens, "data base", "base data") == 1.0);
  CHECK(similarity(Feature::CosineTokens, "a a b", "a b") ==
        doctest::Approx(3.0 / (std::sqrt(5.0) * std::sqrt(2.0))));
  CHECK(similarity(Feature::LevenshteinNorm, "", "") == 1.0);
  CHECK(similarity(Feature::JaccardTokens, "", "") == 1.0);
}

TEST_CASE("similarities are symmetric, reflexive and bounded") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    std::string a = random_word(rng, 10, 5);
    std::string b = random_word(rng, 10, 5);
    for (Feature f : {Feature::Exact, Feature::LevenshteinNorm, Feature::JaccardTokens,
                      Feature::CosineTokens}) {
      double ab = similarity(f, a, b);
      CHECK(ab == similarity(f, b, a));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
      CHECK(similarity(f, a, a) == 1.0);
    }
  }
}

TEST_CASE("rule matching takes the disjunction of conjunctions") {
  RuleSet rules;
  rules.clauses.push_back(parse_clause("year exact = 1 && title levenshtein > 0.5"));

  Record left = {{"year", "2003"}, {"title", "lineage tracing for warehouses"}};
  Record right_same = left;
  CHECK(rule_match(rules, left, right_same) == MatchLabel::Match);

  Record right_year = {{"year", "1995"}, {"title", "lineage tracing for warehouses"}};
  CHECK(rule_match(rules, left, right_year) == MatchLabel::NonMatch);

  Record missing = {{"title", "x"}};
  CHECK_THROWS_AS((void)rule_match(rules, left, missing), MissingAttribute);

  rules.clauses.push_back(parse_clause("title jaccard > 0.9"));
  CHECK(rule_match(rules, left, right_year) == MatchLabel::Match);  // second clause
}

TEST_CASE("predicate parsing validates its pieces") {
  auto p = parse_predicate("fullName levenshtein > 0.5");
  CHECK(p.attribute == "fullName");
  CHECK(p.feature == Feature::LevenshteinNorm);
  CHECK(p.comparator == Cmp::GT);
  CHECK(p.threshold == 0.5);

  CHECK_THROWS_AS((void)parse_predicate("fullName levenshtein >"), ConfigError);
  CHECK_THROWS_AS((void)parse_predicate("fullName sounds > 0.5"), ConfigError);
  CHECK_THROWS_AS((void)parse_predicate("fullName levenshtein ~ 0.5"), ConfigError);
  CHECK_THROWS_AS((void)parse_predicate("fullName levenshtein > 1.5"), ConfigError);
}

TEST_CASE("score matching is strictly greater than the threshold") {
  CHECK(score_match(0.51, 0.5) == MatchLabel::Match);
  CHECK(score_match(0.5, 0.5) == MatchLabel::NonMatch);
  CHECK(score_match(0.3, 0.9) == MatchLabel::NonMatch);

  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    double score = static_cast<double>(rng() % 101) / 100.0;
    double low = static_cast<double>(rng() % 101) / 100.0;
    double high = std::min(1.0, low + static_cast<double>(rng() % 50) / 100.0);
    if (score_match(score, high) == MatchLabel::Match) {
      CHECK(score_match(score, low) == MatchLabel::Match);
    }
  }
}

TEST_CASE("scoring averages weighted features over paired rows") {
  EntityTable left{{"id", "name", "venue"}, {{"1", "alpha", "VLDB"}}};
  EntityTable right{{"id", "name", "venue"}, {{"9", "alpha", "SIGMOD"}}};
  Correspondence c;
  c.id_left = "1";
  c.id_right = "9";
  c.truth = MatchLabel::NonMatch;

  Scorer identical{{{"name", Feature::Exact, 1.0}}};
  auto scored = score_correspondences({c}, left, right, identical);
  CHECK(*scored[0].score == 1.0);

  Scorer mixed{{{"name", Feature::Exact, 1.0}, {"venue", Feature::Exact, 1.0}}};
  scored = score_correspondences({c}, left, right, mixed);
  CHECK(*scored[0].score == 0.5);

  Scorer zero{{{"name", Feature::Exact, 0.0}}};
  CHECK_THROWS_AS((void)score_correspondences({c}, left, right, zero), ConfigError);

  Scorer unknown{{{"missing", Feature::Exact, 1.0}}};
  CHECK_THROWS_AS((void)score_correspondences({c}, left, right, unknown), MissingAttribute);
}

TEST_CASE("a one-edit perturbation keeps the name score high") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 300; ++trial) {
    std::string name = random_word(rng, 12, 26);
    if (name.empty()) continue;
    std::string edited = name;
    edited[rng() % edited.size()] = static_cast<char>('a' + rng() % 26);
    double bound = 1.0 - 1.0 / static_cast<double>(std::max(name.size(), edited.size()));
    CHECK(similarity(Feature::LevenshteinNorm, name, edited) >= bound);
  }
}
