#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emaudit/groups.hpp"

namespace emaudit {

enum class MatchLabel { Match, NonMatch };

inline char label_char(MatchLabel l) { return l == MatchLabel::Match ? 'M' : 'N'; }
std::optional<MatchLabel> parse_label(std::string_view text);

// One audited entity pair: matcher output (score and/or decision) plus the
// ground truth label and both sides' group memberships.
struct Correspondence {
  std::string id_left;
  std::string id_right;
  GroupEncoding groups_left;
  GroupEncoding groups_right;
  std::optional<double> score;
  std::optional<MatchLabel> decision;
  MatchLabel truth = MatchLabel::NonMatch;
};

enum class AuditMode { Single, Pairwise };

// A single group, or an unordered pair of groups, selected for auditing.
struct AuditTarget {
  AuditMode mode = AuditMode::Single;
  GroupEncoding group;                           // Single
  std::pair<GroupEncoding, GroupEncoding> pair;  // Pairwise

  static AuditTarget single(GroupEncoding g) {
    AuditTarget t;
    t.mode = AuditMode::Single;
    t.group = std::move(g);
    return t;
  }
  static AuditTarget pairwise(GroupEncoding a, GroupEncoding b) {
    AuditTarget t;
    t.mode = AuditMode::Pairwise;
    t.pair = {std::move(a), std::move(b)};
    return t;
  }
};

// A pair is admitted to a group's audit when either side belongs to it.
bool legitimate_single(const Correspondence& c, const GroupEncoding& g);

// A pair is admitted to a group pair's audit when its two sides belong to
// the two groups in either direction.
bool legitimate_pairwise(const Correspondence& c,
                         const std::pair<GroupEncoding, GroupEncoding>& pair);

bool legitimate(const Correspondence& c, const AuditTarget& target);

struct FormatConfig {
  char group_delimiter = '|';
  // Audit inputs must carry a score or a prediction per row; generated pair
  // files awaiting a matcher run are loaded with this check disabled.
  bool require_prediction = true;
};

// Correspondence CSV: header
//   id_left,id_right,groups_left,groups_right,score,prediction,label
// with prediction/label in {M,N}, score a decimal in [0,1] or empty, and
// group cells '|'-separated group value names.
std::vector<Correspondence> load_correspondences(std::istream& in,
                                                 const GroupUniverse& universe,
                                                 const FormatConfig& format = {});
std::vector<Correspondence> load_correspondences_file(const std::string& path,
                                                      const GroupUniverse& universe,
                                                      const FormatConfig& format = {});
void save_correspondences(std::ostream& out, const std::vector<Correspondence>& cs,
                          const GroupUniverse& universe, const FormatConfig& format = {});

// Returns a copy with every decision resolved. With a threshold override,
// decisions are recomputed from scores (strict greater, MissingScore when a
// score is absent); otherwise the prediction column is authoritative and a
// missing one raises MissingDecision.
std::vector<Correspondence> with_decisions(std::vector<Correspondence> cs,
                                           std::optional<double> threshold);

// Swaps the left and right sides of every correspondence (id and groups).
std::vector<Correspondence> swap_sides(std::vector<Correspondence> cs);

}  // namespace emaudit
