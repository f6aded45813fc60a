#include "emaudit/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "emaudit/csv.hpp"
#include "emaudit/errors.hpp"

namespace emaudit {

std::optional<MatchLabel> parse_label(std::string_view text) {
  if (text == "M") return MatchLabel::Match;
  if (text == "N") return MatchLabel::NonMatch;
  return std::nullopt;
}

bool legitimate_single(const Correspondence& c, const GroupEncoding& g) {
  return g.contains(c.groups_left) || g.contains(c.groups_right);
}

bool legitimate_pairwise(const Correspondence& c,
                         const std::pair<GroupEncoding, GroupEncoding>& pair) {
  const auto& [s, t] = pair;
  return (s.contains(c.groups_left) && t.contains(c.groups_right)) ||
         (t.contains(c.groups_left) && s.contains(c.groups_right));
}

bool legitimate(const Correspondence& c, const AuditTarget& target) {
  return target.mode == AuditMode::Single ? legitimate_single(c, target.group)
                                          : legitimate_pairwise(c, target.pair);
}

namespace {

constexpr std::array<const char*, 7> kColumns = {
    "id_left", "id_right", "groups_left", "groups_right", "score", "prediction", "label"};

std::vector<std::string> split_groups(std::string_view cell, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(delimiter, start);
    if (end == std::string_view::npos) end = cell.size();
    if (end > start) out.emplace_back(cell.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

double parse_score(std::string_view text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "malformed score '" + std::string(text) + "'");
  }
  if (value < 0.0 || value > 1.0) {
    throw ParseError(line, "score out of [0,1]: " + std::string(text));
  }
  return value;
}

std::string format_score(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::vector<Correspondence> load_correspondences(std::istream& in,
                                                 const GroupUniverse& universe,
                                                 const FormatConfig& format) {
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!csv::read_row(in, fields, line)) {
    throw ParseError(1, "empty correspondence file (header expected)");
  }
  const std::size_t header_width = fields.size();
  std::array<std::size_t, kColumns.size()> col{};
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    auto it = std::find(fields.begin(), fields.end(), kColumns[i]);
    if (it == fields.end()) throw MissingColumn(kColumns[i]);
    col[i] = static_cast<std::size_t>(it - fields.begin());
  }

  std::vector<Correspondence> out;
  while (csv::read_row(in, fields, line)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != header_width) {
      throw ParseError(line, "expected " + std::to_string(header_width) +
                                 " fields, got " + std::to_string(fields.size()));
    }
    Correspondence c;
    c.id_left = fields[col[0]];
    c.id_right = fields[col[1]];
    try {
      c.groups_left = universe.encode(split_groups(fields[col[2]], format.group_delimiter));
      c.groups_right = universe.encode(split_groups(fields[col[3]], format.group_delimiter));
      universe.validate_entity(c.groups_left);
      universe.validate_entity(c.groups_right);
    } catch (const UnknownGroupValue&) {
      throw;
    } catch (const AuditError& e) {
      throw ParseError(line, e.what());
    }
    if (!fields[col[4]].empty()) c.score = parse_score(fields[col[4]], line);
    if (!fields[col[5]].empty()) {
      auto decision = parse_label(fields[col[5]]);
      if (!decision) throw ParseError(line, "prediction must be 'M' or 'N'");
      c.decision = decision;
    }
    if (format.require_prediction && !c.score && !c.decision) {
      throw ParseError(line, "row carries neither a score nor a prediction");
    }
    auto truth = parse_label(fields[col[6]]);
    if (!truth) throw ParseError(line, "label must be 'M' or 'N'");
    c.truth = *truth;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Correspondence> load_correspondences_file(const std::string& path,
                                                      const GroupUniverse& universe,
                                                      const FormatConfig& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError("cannot open correspondence file: " + path);
  return load_correspondences(in, universe, format);
}

void save_correspondences(std::ostream& out, const std::vector<Correspondence>& cs,
                          const GroupUniverse& universe, const FormatConfig& format) {
  std::vector<std::string> row(kColumns.begin(), kColumns.end());
  csv::write_row(out, row);
  for (const auto& c : cs) {
    auto join = [&](const GroupEncoding& enc) {
      std::string cell;
      for (const auto& name : universe.decode(enc)) {
        if (!cell.empty()) cell += format.group_delimiter;
        cell += name;
      }
      return cell;
    };
    row[0] = c.id_left;
    row[1] = c.id_right;
    row[2] = join(c.groups_left);
    row[3] = join(c.groups_right);
    row[4] = c.score ? format_score(*c.score) : "";
    row[5] = c.decision ? std::string(1, label_char(*c.decision)) : "";
    row[6] = std::string(1, label_char(c.truth));
    csv::write_row(out, row);
  }
}

std::vector<Correspondence> with_decisions(std::vector<Correspondence> cs,
                                           std::optional<double> threshold) {
  for (auto& c : cs) {
    if (threshold) {
      if (!c.score) {
        throw MissingScore("correspondence (" + c.id_left + ", " + c.id_right +
                           ") has no score to threshold");
      }
      c.decision = *c.score > *threshold ? MatchLabel::Match : MatchLabel::NonMatch;
    } else if (!c.decision) {
      throw MissingDecision("correspondence (" + c.id_left + ", " + c.id_right +
                            ") has no prediction; pass a threshold to derive one");
    }
  }
  return cs;
}

std::vector<Correspondence> swap_sides(std::vector<Correspondence> cs) {
  for (auto& c : cs) {
    std::swap(c.id_left, c.id_right);
    std::swap(c.groups_left, c.groups_right);
  }
  return cs;
}

}  // namespace emaudit
