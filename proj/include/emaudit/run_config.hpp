#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emaudit/audit.hpp"
#include "emaudit/conf.hpp"
#include "emaudit/datagen.hpp"
#include "emaudit/dataset.hpp"
#include "emaudit/groups.hpp"
#include "emaudit/matchers.hpp"
#include "emaudit/measures.hpp"

namespace emaudit {

enum class RunMode { Single, Pairwise, Both };

struct AuditSettings {
  RunMode mode = RunMode::Single;
  // Either a subgroup level or explicit '+'-joined group specs.
  std::optional<std::size_t> level;
  std::vector<std::string> explicit_targets;
  bool pure_setwise = false;
  std::vector<MeasureId> measures;  // empty means all
  DisparityConfig disparity;
  std::optional<double> threshold;  // recompute decisions from scores
  std::string output_prefix = "report";
};

struct MatcherSettings {
  RuleSet rules;
  Scorer scorer;
  SimilarityOptions similarity;
  std::string input;  // falls back to data.pairs
  std::string output = "matched.csv";
};

struct SweepSettings {
  MeasureId measure = MeasureId::TPRP;
  std::vector<double> thresholds;  // empty means the default grid
  bool mean_abs = false;           // report the alternative aggregation too
  std::string output_prefix = "sweep";
};

struct DatagenSettings {
  GenConfig gen;
  std::string source_path;
  std::string out_dir = ".";
  bool tables_only = false;
};

struct RunConfig {
  GroupUniverse universe;
  std::string pairs_path;
  std::string left_path;
  std::string right_path;
  AuditSettings audit;
  MatcherSettings matcher;
  SweepSettings sweep;
  DatagenSettings datagen;
  bool has_matcher = false;
  bool has_sweep = false;
  bool has_datagen = false;
};

RunConfig load_run_config(const std::string& path);
RunConfig interpret_config(const conf::Document& doc);

// Expands the audit target selection against the universe, in deterministic
// order; pairwise targets are the unordered pairs (with repetition) of the
// selected groups.
std::vector<AuditTarget> build_targets(const RunConfig& config);

// The measures to audit: the configured list, or all of them.
std::vector<MeasureId> effective_measures(const AuditSettings& audit);

}  // namespace emaudit
