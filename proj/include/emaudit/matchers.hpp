#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emaudit/dataset.hpp"
#include "emaudit/similarity.hpp"
#include "emaudit/table.hpp"

namespace emaudit {

enum class Cmp { GT, GE, EQ, LT, LE };

std::string_view cmp_name(Cmp c);
std::optional<Cmp> parse_cmp(std::string_view token);

// One matching condition: a similarity feature over an attribute, compared
// against a threshold.
struct SimilarityPredicate {
  std::string attribute;
  Feature feature = Feature::Exact;
  Cmp comparator = Cmp::GT;
  double threshold = 0.5;
};

// Disjunction of conjunctions of predicates.
struct RuleSet {
  std::vector<std::vector<SimilarityPredicate>> clauses;
};

// Weighted similarity features averaged into a confidence score.
struct ScorerFeature {
  std::string attribute;
  Feature feature = Feature::LevenshteinNorm;
  double weight = 1.0;
};

struct Scorer {
  std::vector<ScorerFeature> features;
};

// Textual forms used by the run configuration:
//   predicate:  "<attribute> <feature> <cmp> <threshold>"
//   clause:     predicates joined by "&&"
//   scorer:     "<attribute> <feature> <weight>"
SimilarityPredicate parse_predicate(std::string_view text);
std::vector<SimilarityPredicate> parse_clause(std::string_view text);
ScorerFeature parse_scorer_feature(std::string_view text);

using Record = std::map<std::string, std::string>;

bool predicate_holds(const SimilarityPredicate& p, const Record& left, const Record& right,
                     const SimilarityOptions& options = {});

// Match when any clause has every predicate satisfied. Throws
// MissingAttribute when a referenced attribute is absent from either record.
MatchLabel rule_match(const RuleSet& rules, const Record& left, const Record& right,
                      const SimilarityOptions& options = {});

// Match when the confidence score is strictly greater than the threshold.
MatchLabel score_match(double score, double threshold);

// Fills the score column: weighted mean of the scorer's features over the
// attribute values of the paired rows. Decisions are left untouched.
std::vector<Correspondence> score_correspondences(std::vector<Correspondence> cs,
                                                  const EntityTable& left,
                                                  const EntityTable& right,
                                                  const Scorer& scorer,
                                                  const SimilarityOptions& options = {});

// Fills the prediction column from a rule set.
std::vector<Correspondence> apply_rules(std::vector<Correspondence> cs,
                                        const EntityTable& left, const EntityTable& right,
                                        const RuleSet& rules,
                                        const SimilarityOptions& options = {});

}  // namespace emaudit
