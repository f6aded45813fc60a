#include "emaudit/matchers.hpp"

#include <charconv>
#include <sstream>

#include "emaudit/errors.hpp"

namespace emaudit {

std::string_view cmp_name(Cmp c) {
  switch (c) {
    case Cmp::GT: return ">";
    case Cmp::GE: return ">=";
    case Cmp::EQ: return "=";
    case Cmp::LT: return "<";
    case Cmp::LE: return "<=";
  }
  return "?";
}

std::optional<Cmp> parse_cmp(std::string_view token) {
  if (token == ">") return Cmp::GT;
  if (token == ">=") return Cmp::GE;
  if (token == "=" || token == "==") return Cmp::EQ;
  if (token == "<") return Cmp::LT;
  if (token == "<=") return Cmp::LE;
  return std::nullopt;
}

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

double parse_unit_value(const std::string& token, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ConfigError("malformed " + std::string(what) + ": '" + token + "'");
  }
  return value;
}

}  // namespace

SimilarityPredicate parse_predicate(std::string_view text) {
  auto tokens = split_ws(text);
  if (tokens.size() != 4) {
    throw ConfigError("predicate must be '<attribute> <feature> <cmp> <threshold>': '" +
                      std::string(text) + "'");
  }
  SimilarityPredicate p;
  p.attribute = tokens[0];
  auto feature = parse_feature(tokens[1]);
  if (!feature) throw ConfigError("unknown similarity feature: '" + tokens[1] + "'");
  p.feature = *feature;
  auto cmp = parse_cmp(tokens[2]);
  if (!cmp) throw ConfigError("unknown comparator: '" + tokens[2] + "'");
  p.comparator = *cmp;
  p.threshold = parse_unit_value(tokens[3], "predicate threshold");
  if (p.threshold < 0.0 || p.threshold > 1.0) {
    throw ConfigError("predicate threshold out of [0,1]: '" + tokens[3] + "'");
  }
  return p;
}

std::vector<SimilarityPredicate> parse_clause(std::string_view text) {
  std::vector<SimilarityPredicate> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find("&&", start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_predicate(text.substr(start, end - start)));
    start = end + 2;
  }
  if (out.empty()) throw ConfigError("empty rule clause");
  return out;
}

ScorerFeature parse_scorer_feature(std::string_view text) {
  auto tokens = split_ws(text);
  if (tokens.size() != 3) {
    throw ConfigError("scorer feature must be '<attribute> <feature> <weight>': '" +
                      std::string(text) + "'");
  }
  ScorerFeature f;
  f.attribute = tokens[0];
  auto feature = parse_feature(tokens[1]);
  if (!feature) throw ConfigError("unknown similarity feature: '" + tokens[1] + "'");
  f.feature = *feature;
  f.weight = parse_unit_value(tokens[2], "scorer weight");
  if (f.weight < 0.0) throw ConfigError("scorer weights must be non-negative");
  return f;
}

namespace {

const std::string& field(const Record& record, const std::string& attribute) {
  auto it = record.find(attribute);
  if (it == record.end()) throw MissingAttribute(attribute);
  return it->second;
}

bool compare(double value, Cmp cmp, double threshold) {
  switch (cmp) {
    case Cmp::GT: return value > threshold;
    case Cmp::GE: return value >= threshold;
    case Cmp::EQ: return value == threshold;
    case Cmp::LT: return value < threshold;
    case Cmp::LE: return value <= threshold;
  }
  return false;
}

}  // namespace

bool predicate_holds(const SimilarityPredicate& p, const Record& left, const Record& right,
                     const SimilarityOptions& options) {
  double value = similarity(p.feature, field(left, p.attribute), field(right, p.attribute),
                            options);
  return compare(value, p.comparator, p.threshold);
}

MatchLabel rule_match(const RuleSet& rules, const Record& left, const Record& right,
                      const SimilarityOptions& options) {
  if (rules.clauses.empty()) throw ConfigError("rule set has no clauses");
  for (const auto& clause : rules.clauses) {
    bool holds = true;
    for (const auto& p : clause) {
      if (!predicate_holds(p, left, right, options)) {
        holds = false;
        break;
      }
    }
    if (holds) return MatchLabel::Match;
  }
  return MatchLabel::NonMatch;
}

MatchLabel score_match(double score, double threshold) {
  return score > threshold ? MatchLabel::Match : MatchLabel::NonMatch;
}

namespace {

// Pre-resolved column indices so bulk scoring avoids per-pair lookups.
struct BoundColumns {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

template <typename Item>
BoundColumns bind_columns(const std::vector<Item>& items, const EntityTable& left,
                          const EntityTable& right) {
  BoundColumns cols;
  for (const auto& item : items) {
    try {
      cols.left.push_back(left.column_index(item.attribute));
      cols.right.push_back(right.column_index(item.attribute));
    } catch (const MissingColumn&) {
      throw MissingAttribute(item.attribute);
    }
  }
  return cols;
}

std::size_t row_of(const std::unordered_map<std::string, std::size_t>& index,
                   const std::string& id, std::string_view side) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw AuditError("correspondence references unknown " + std::string(side) +
                     " id: '" + id + "'");
  }
  return it->second;
}

}  // namespace

std::vector<Correspondence> score_correspondences(std::vector<Correspondence> cs,
                                                  const EntityTable& left,
                                                  const EntityTable& right,
                                                  const Scorer& scorer,
                                                  const SimilarityOptions& options) {
  if (scorer.features.empty()) throw ConfigError("scorer has no features");
  double total_weight = 0.0;
  for (const auto& f : scorer.features) {
    if (f.weight < 0.0) throw ConfigError("scorer weights must be non-negative");
    total_weight += f.weight;
  }
  if (total_weight <= 0.0) throw ConfigError("scorer weights must sum to a positive value");

  BoundColumns cols = bind_columns(scorer.features, left, right);
  auto left_index = left.id_index();
  auto right_index = right.id_index();
  for (auto& c : cs) {
    std::size_t lr = row_of(left_index, c.id_left, "left");
    std::size_t rr = row_of(right_index, c.id_right, "right");
    double sum = 0.0;
    for (std::size_t i = 0; i < scorer.features.size(); ++i) {
      sum += scorer.features[i].weight *
             similarity(scorer.features[i].feature, left.cell(lr, cols.left[i]),
                        right.cell(rr, cols.right[i]), options);
    }
    c.score = sum / total_weight;
  }
  return cs;
}

std::vector<Correspondence> apply_rules(std::vector<Correspondence> cs,
                                        const EntityTable& left, const EntityTable& right,
                                        const RuleSet& rules,
                                        const SimilarityOptions& options) {
  if (rules.clauses.empty()) throw ConfigError("rule set has no clauses");
  std::vector<BoundColumns> bound;
  for (const auto& clause : rules.clauses) {
    if (clause.empty()) throw ConfigError("rule set has an empty clause");
    bound.push_back(bind_columns(clause, left, right));
  }
  auto left_index = left.id_index();
  auto right_index = right.id_index();
  for (auto& c : cs) {
    std::size_t lr = row_of(left_index, c.id_left, "left");
    std::size_t rr = row_of(right_index, c.id_right, "right");
    MatchLabel decision = MatchLabel::NonMatch;
    for (std::size_t ci = 0; ci < rules.clauses.size(); ++ci) {
      const auto& clause = rules.clauses[ci];
      bool holds = true;
      for (std::size_t pi = 0; pi < clause.size(); ++pi) {
        double value = similarity(clause[pi].feature, left.cell(lr, bound[ci].left[pi]),
                                  right.cell(rr, bound[ci].right[pi]), options);
        if (!compare(value, clause[pi].comparator, clause[pi].threshold)) {
          holds = false;
          break;
        }
      }
      if (holds) {
        decision = MatchLabel::Match;
        break;
      }
    }
    c.decision = decision;
  }
  return cs;
}

}  // namespace emaudit
