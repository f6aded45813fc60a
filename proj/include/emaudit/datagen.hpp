#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emaudit/dataset.hpp"
#include "emaudit/groups.hpp"
#include "emaudit/rng.hpp"
#include "emaudit/table.hpp"

namespace emaudit {

enum class Recipe { FacultyMatch, NoFly };

std::string_view recipe_name(Recipe r);
std::optional<Recipe> parse_recipe(std::string_view token);

// One side's sample: how many rows, drawn per-group by the given fractions
// (largest-remainder rounding, fractions must sum to 1).
struct SampleSpec {
  std::size_t size = 0;
  std::vector<std::pair<std::string, double>> ratios;
};

struct NonMatchDrop {
  std::string group;
  double fraction = 0.0;
};

struct GenConfig {
  std::uint64_t seed = 0;
  Recipe recipe = Recipe::NoFly;
  std::string sensitive_column;            // defaults: country / race
  std::string key_column;                  // defaults: scholarID / personID
  std::vector<std::string> perturb_fields; // defaults: fullName / firstName,lastName

  // FacultyMatch: keep all source rows of these two groups, optionally
  // subsampled, paired against a name-perturbed copy of themselves.
  std::vector<std::string> groups = {"cn", "de"};
  std::optional<std::size_t> sample_size;
  std::optional<NonMatchDrop> nonmatch_drop;

  // NoFly: two independent quota samples; the right side is the watch list
  // whose name fields get perturbed.
  SampleSpec left_sample;
  SampleSpec right_sample;
};

// Fills recipe-dependent defaults for empty column settings.
GenConfig with_recipe_defaults(GenConfig cfg);

// Returns a name at edit distance exactly 1: one uniformly chosen insert,
// delete, or substitute of a lowercase letter (empty input forces insert).
std::string perturb_name(const std::string& name, PortableRng& rng);

// Deterministic generator: tables are pure functions of (config, source);
// the pair stream uses its own seed-derived stream so it replays
// identically on every call.
class DatasetGenerator {
 public:
  DatasetGenerator(GenConfig cfg, const EntityTable& source);

  const GenConfig& config() const { return cfg_; }
  const EntityTable& left() const { return left_; }
  const EntityTable& right() const { return right_; }

  // Source row index backing each generated row (right side rows are the
  // perturbed copies of these).
  const std::vector<std::size_t>& left_source_rows() const { return left_source_; }
  const std::vector<std::size_t>& right_source_rows() const { return right_source_; }

  // Streams the labeled Cartesian product in left-major order, applying the
  // configured non-match drop. Never materializes the pair set.
  using PairSink = std::function<void(std::size_t left_row, std::size_t right_row,
                                      MatchLabel truth)>;
  void for_each_pair(const PairSink& sink) const;

  std::vector<Correspondence> correspondences(const GroupUniverse& universe) const;

 private:
  GenConfig cfg_;
  EntityTable left_;
  EntityTable right_;
  std::vector<std::size_t> left_source_;
  std::vector<std::size_t> right_source_;
  std::size_t key_col_left_ = 0;
  std::size_t key_col_right_ = 0;
  std::size_t group_col_left_ = 0;
  std::size_t group_col_right_ = 0;
};

struct GenResult {
  EntityTable left;
  EntityTable right;
  std::vector<Correspondence> pairs;
};

GenResult generate_faculty_match(const GenConfig& cfg, const EntityTable& source,
                                 const GroupUniverse& universe);
GenResult generate_nofly(const GenConfig& cfg, const EntityTable& source,
                         const GroupUniverse& universe);

// Largest-remainder quotas: non-negative, sums to `size`, fractions must
// sum to 1 within 1e-9.
std::vector<std::size_t> quota_counts(std::size_t size,
                                      const std::vector<std::pair<std::string, double>>& ratios);

}  // namespace emaudit
