#include "emaudit/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emaudit/errors.hpp"

namespace emaudit {

std::string_view recipe_name(Recipe r) {
  return r == Recipe::FacultyMatch ? "facultymatch" : "nofly";
}

std::optional<Recipe> parse_recipe(std::string_view token) {
  if (token == "facultymatch" || token == "faculty") return Recipe::FacultyMatch;
  if (token == "nofly") return Recipe::NoFly;
  return std::nullopt;
}

GenConfig with_recipe_defaults(GenConfig cfg) {
  if (cfg.recipe == Recipe::FacultyMatch) {
    if (cfg.sensitive_column.empty()) cfg.sensitive_column = "country";
    if (cfg.key_column.empty()) cfg.key_column = "scholarID";
    if (cfg.perturb_fields.empty()) cfg.perturb_fields = {"fullName"};
  } else {
    if (cfg.sensitive_column.empty()) cfg.sensitive_column = "race";
    if (cfg.key_column.empty()) cfg.key_column = "personID";
    if (cfg.perturb_fields.empty()) cfg.perturb_fields = {"firstName", "lastName"};
  }
  return cfg;
}

std::string perturb_name(const std::string& name, PortableRng& rng) {
  std::string out = name;
  // 0 insert, 1 delete, 2 substitute; empty strings only support insert.
  std::uint64_t op = name.empty() ? 0 : rng.below(3);
  if (op == 0) {
    std::size_t pos = rng.below(out.size() + 1);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), rng.lowercase_letter());
  } else if (op == 1) {
    std::size_t pos = rng.below(out.size());
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
  } else {
    std::size_t pos = rng.below(out.size());
    char original = out[pos];
    char replacement = rng.lowercase_letter();
    while (replacement == original) replacement = rng.lowercase_letter();
    out[pos] = replacement;
  }
  return out;
}

std::vector<std::size_t> quota_counts(
    std::size_t size, const std::vector<std::pair<std::string, double>>& ratios) {
  if (ratios.empty()) throw ConfigError("sample needs at least one group ratio");
  double total = 0.0;
  for (const auto& [group, fraction] : ratios) {
    if (fraction < 0.0 || fraction > 1.0) {
      throw ConfigError("ratio for group '" + group + "' out of [0,1]");
    }
    total += fraction;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("group ratios must sum to 1, got " + std::to_string(total));
  }

  std::vector<std::size_t> counts(ratios.size());
  std::vector<std::pair<double, std::size_t>> remainders;  // (-fraction, index)
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    double exact = ratios[i].second * static_cast<double>(size);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(-(exact - std::floor(exact)), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; assigned < size; ++i, ++assigned) {
    ++counts[remainders[i % remainders.size()].second];
  }
  return counts;
}

namespace {

// Partial Fisher-Yates: the first `take` entries of `pool` end up being a
// uniform sample without replacement, in draw order.
std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool,
                                                    std::size_t take, PortableRng& rng) {
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

std::vector<std::size_t> quota_sample(const EntityTable& source, std::size_t group_col,
                                      const SampleSpec& spec, PortableRng& rng) {
  if (spec.size == 0) throw ConfigError("sample size must be positive");
  auto counts = quota_counts(spec.size, spec.ratios);
  std::vector<std::size_t> out;
  out.reserve(spec.size);
  for (std::size_t g = 0; g < spec.ratios.size(); ++g) {
    std::vector<std::size_t> pool;
    for (std::size_t r = 0; r < source.rows.size(); ++r) {
      if (source.rows[r][group_col] == spec.ratios[g].first) pool.push_back(r);
    }
    if (counts[g] > pool.size()) {
      throw InsufficientSourceRows(spec.ratios[g].first, counts[g], pool.size());
    }
    auto picked = sample_without_replacement(std::move(pool), counts[g], rng);
    out.insert(out.end(), picked.begin(), picked.end());
  }
  return out;
}

EntityTable rows_subset(const EntityTable& source, const std::vector<std::size_t>& rows) {
  EntityTable out;
  out.columns = source.columns;
  out.rows.reserve(rows.size());
  for (std::size_t r : rows) out.rows.push_back(source.rows[r]);
  return out;
}

constexpr std::uint64_t kPairStreamSalt = 0x9e3779b97f4a7c15ull;

}  // namespace

DatasetGenerator::DatasetGenerator(GenConfig cfg, const EntityTable& source)
    : cfg_(with_recipe_defaults(std::move(cfg))) {
  PortableRng rng(cfg_.seed);
  std::size_t group_col = source.column_index(cfg_.sensitive_column);
  source.column_index(cfg_.key_column);  // surfaces MissingColumn early

  if (cfg_.recipe == Recipe::FacultyMatch) {
    if (cfg_.groups.size() != 2) {
      throw ConfigError("the faculty recipe expects exactly two groups");
    }
    std::vector<std::size_t> pool;
    for (std::size_t r = 0; r < source.rows.size(); ++r) {
      const auto& value = source.rows[r][group_col];
      if (value == cfg_.groups[0] || value == cfg_.groups[1]) pool.push_back(r);
    }
    if (pool.empty()) throw ConfigError("source has no rows of the configured groups");
    if (cfg_.sample_size && *cfg_.sample_size < pool.size()) {
      left_source_ = sample_without_replacement(std::move(pool), *cfg_.sample_size, rng);
    } else {
      left_source_ = std::move(pool);
    }
    right_source_ = left_source_;
  } else {
    left_source_ = quota_sample(source, group_col, cfg_.left_sample, rng);
    right_source_ = quota_sample(source, group_col, cfg_.right_sample, rng);
  }

  left_ = rows_subset(source, left_source_);
  right_ = rows_subset(source, right_source_);

  for (const auto& field : cfg_.perturb_fields) {
    std::size_t col = right_.column_index(field);
    for (auto& row : right_.rows) {
      row[col] = perturb_name(row[col], rng);
    }
  }

  key_col_left_ = left_.column_index(cfg_.key_column);
  key_col_right_ = right_.column_index(cfg_.key_column);
  group_col_left_ = left_.column_index(cfg_.sensitive_column);
  group_col_right_ = right_.column_index(cfg_.sensitive_column);
}

void DatasetGenerator::for_each_pair(const PairSink& sink) const {
  // Own stream so repeated traversals (count passes, then writing) replay
  // the same drop decisions.
  PortableRng rng(cfg_.seed ^ kPairStreamSalt);
  const bool drop = cfg_.nonmatch_drop.has_value();
  const std::string& drop_group = drop ? cfg_.nonmatch_drop->group : std::string{};
  const double drop_fraction = drop ? cfg_.nonmatch_drop->fraction : 0.0;

  for (std::size_t l = 0; l < left_.rows.size(); ++l) {
    for (std::size_t r = 0; r < right_.rows.size(); ++r) {
      MatchLabel truth = left_.rows[l][key_col_left_] == right_.rows[r][key_col_right_]
                             ? MatchLabel::Match
                             : MatchLabel::NonMatch;
      if (drop && truth == MatchLabel::NonMatch &&
          (left_.rows[l][group_col_left_] == drop_group ||
           right_.rows[r][group_col_right_] == drop_group)) {
        if (rng.unit() < drop_fraction) continue;
      }
      sink(l, r, truth);
    }
  }
}

std::vector<Correspondence> DatasetGenerator::correspondences(
    const GroupUniverse& universe) const {
  std::size_t id_left = left_.column_index("id");
  std::size_t id_right = right_.column_index("id");
  std::vector<Correspondence> out;
  for_each_pair([&](std::size_t l, std::size_t r, MatchLabel truth) {
    Correspondence c;
    c.id_left = left_.rows[l][id_left];
    c.id_right = right_.rows[r][id_right];
    c.groups_left = universe.encode({left_.rows[l][group_col_left_]});
    c.groups_right = universe.encode({right_.rows[r][group_col_right_]});
    c.truth = truth;
    out.push_back(std::move(c));
  });
  return out;
}

namespace {

GenResult run_generator(const GenConfig& cfg, const EntityTable& source,
                        const GroupUniverse& universe) {
  DatasetGenerator gen(cfg, source);
  GenResult result;
  result.left = gen.left();
  result.right = gen.right();
  result.pairs = gen.correspondences(universe);
  return result;
}

}  // namespace

GenResult generate_faculty_match(const GenConfig& cfg, const EntityTable& source,
                                 const GroupUniverse& universe) {
  GenConfig c = cfg;
  c.recipe = Recipe::FacultyMatch;
  return run_generator(c, source, universe);
}

GenResult generate_nofly(const GenConfig& cfg, const EntityTable& source,
                         const GroupUniverse& universe) {
  GenConfig c = cfg;
  c.recipe = Recipe::NoFly;
  return run_generator(c, source, universe);
}

}  // namespace emaudit
