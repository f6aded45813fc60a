#include "emaudit/run_config.hpp"

#include <charconv>

#include "emaudit/errors.hpp"

namespace emaudit {

namespace {

GroupUniverse parse_universe(const conf::Document& doc) {
  if (!doc.has_section("universe")) {
    throw ConfigError("missing config section: universe");
  }
  std::vector<SensitiveAttribute> attributes;
  for (const auto& name : doc.get_strings("universe", "attributes")) {
    SensitiveAttribute attr;
    attr.name = name;
    std::string section = "universe." + name;
    auto kind = parse_attribute_kind(doc.get_string_or(section, "kind", "multi-exclusive"));
    if (!kind) {
      throw ConfigError("config field " + section +
                        ".kind must be binary, multi-exclusive or setwise");
    }
    attr.kind = *kind;
    attr.domain = doc.get_strings(section, "values");
    attributes.push_back(std::move(attr));
  }
  return GroupUniverse(std::move(attributes));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

void parse_target_selection(const conf::Document& doc, AuditSettings& audit) {
  if (!doc.has("audit", "targets")) {
    audit.level = 1;
    return;
  }
  auto tokens = doc.get_strings("audit", "targets");
  if (tokens.size() == 1 && tokens[0].rfind("level:", 0) == 0) {
    std::string_view digits = std::string_view(tokens[0]).substr(6);
    std::size_t level = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), level);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || level == 0) {
      throw ConfigError("config field audit.targets: malformed level selector '" +
                        tokens[0] + "'");
    }
    audit.level = level;
    return;
  }
  audit.explicit_targets = tokens;
}

RunMode parse_mode(const std::string& text) {
  if (text == "single") return RunMode::Single;
  if (text == "pairwise") return RunMode::Pairwise;
  if (text == "both") return RunMode::Both;
  throw ConfigError("config field audit.mode must be single, pairwise or both");
}

std::vector<MeasureId> parse_measures(const conf::Document& doc) {
  if (!doc.has("audit", "measures")) return {};
  auto tokens = doc.get_strings("audit", "measures");
  if (tokens.size() == 1 && tokens[0] == "all") return {};
  std::vector<MeasureId> out;
  for (const auto& token : tokens) {
    auto id = parse_measure(token);
    if (!id) throw ConfigError("config field audit.measures: unknown measure '" + token + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw ConfigError("config field audit.measures must not be empty");
  return out;
}

DisparityConfig parse_disparity(const conf::Document& doc) {
  DisparityConfig cfg;
  cfg.tau = doc.get_number_or("audit", "tau", 0.2);
  if (cfg.tau < 0.0) throw ConfigError("config field audit.tau must be non-negative");
  std::string op = doc.get_string_or("audit", "op", "sub");
  if (op == "sub") {
    cfg.op = DisparityOp::Sub;
  } else if (op == "div") {
    cfg.op = DisparityOp::Div;
  } else {
    throw ConfigError("config field audit.op must be sub or div");
  }
  std::string convention = doc.get_string_or("audit", "convention", "eq");
  if (convention == "eq") {
    cfg.convention = Convention::Equation;
  } else if (convention == "table") {
    cfg.convention = Convention::Table;
  } else {
    throw ConfigError("config field audit.convention must be eq or table");
  }
  std::string baseline = doc.get_string_or("audit", "baseline", "overall");
  if (baseline == "overall") {
    cfg.baseline = BaselineKind::Overall;
  } else if (baseline == "complement") {
    cfg.baseline = BaselineKind::Complement;
  } else {
    throw ConfigError("config field audit.baseline must be overall or complement");
  }
  return cfg;
}

std::vector<double> parse_thresholds(const conf::Document& doc) {
  if (!doc.has("sweep", "thresholds")) return {};
  const conf::Value* v = doc.find("sweep", "thresholds");
  if (v->type == conf::Value::Type::String) {
    // "start:stop:step" grid shorthand
    auto parts = split(v->str, ':');
    if (parts.size() != 3) {
      throw ConfigError("config field sweep.thresholds grid must be 'start:stop:step'");
    }
    double start = std::stod(parts[0]);
    double stop = std::stod(parts[1]);
    double step = std::stod(parts[2]);
    if (step <= 0.0) throw ConfigError("config field sweep.thresholds: step must be positive");
    std::vector<double> out;
    for (int i = 0;; ++i) {
      double t = start + static_cast<double>(i) * step;
      if (t > stop + 1e-12) break;
      out.push_back(t);
    }
    return out;
  }
  return doc.get_numbers("sweep", "thresholds");
}

void parse_ratios(const conf::Document& doc, std::string_view key, SampleSpec& spec) {
  // "group:fraction" entries
  for (const auto& token : doc.get_strings("datagen", std::string(key))) {
    auto sep = token.rfind(':');
    if (sep == std::string::npos) {
      throw ConfigError("config field datagen." + std::string(key) +
                        " entries must be 'group:fraction'");
    }
    spec.ratios.emplace_back(token.substr(0, sep), std::stod(token.substr(sep + 1)));
  }
}

MatcherSettings parse_matcher(const conf::Document& doc) {
  MatcherSettings m;
  if (doc.has("matcher", "rules")) {
    for (const auto& clause : doc.get_strings("matcher", "rules")) {
      m.rules.clauses.push_back(parse_clause(clause));
    }
  }
  if (doc.has("matcher", "scorer")) {
    for (const auto& feature : doc.get_strings("matcher", "scorer")) {
      m.scorer.features.push_back(parse_scorer_feature(feature));
    }
  }
  if (m.rules.clauses.empty() && m.scorer.features.empty()) {
    throw ConfigError("config section matcher needs rules and/or scorer entries");
  }
  m.similarity.case_insensitive = !doc.get_bool_or("matcher", "case_sensitive", false);
  m.input = doc.get_string_or("matcher", "input", "");
  m.output = doc.get_string_or("matcher", "output", "matched.csv");
  return m;
}

DatagenSettings parse_datagen(const conf::Document& doc) {
  DatagenSettings d;
  auto recipe = parse_recipe(doc.get_string_or("datagen", "recipe", "nofly"));
  if (!recipe) throw ConfigError("config field datagen.recipe must be nofly or facultymatch");
  d.gen.recipe = *recipe;
  d.gen.seed = static_cast<std::uint64_t>(doc.get_number_or("datagen", "seed", 0));
  d.source_path = doc.get_string("datagen", "source");
  d.out_dir = doc.get_string_or("datagen", "out", ".");
  d.tables_only = doc.get_bool_or("datagen", "tables_only", false);
  d.gen.sensitive_column = doc.get_string_or("datagen", "sensitive", "");
  d.gen.key_column = doc.get_string_or("datagen", "key", "");
  if (doc.has("datagen", "perturb")) {
    d.gen.perturb_fields = doc.get_strings("datagen", "perturb");
  }
  if (d.gen.recipe == Recipe::FacultyMatch) {
    if (doc.has("datagen", "groups")) d.gen.groups = doc.get_strings("datagen", "groups");
    if (doc.has("datagen", "sample_size")) {
      d.gen.sample_size = static_cast<std::size_t>(doc.get_number("datagen", "sample_size"));
    }
    if (doc.has("datagen", "drop_group") || doc.has("datagen", "drop_fraction")) {
      NonMatchDrop drop;
      drop.group = doc.get_string("datagen", "drop_group");
      drop.fraction = doc.get_number("datagen", "drop_fraction");
      if (drop.fraction < 0.0 || drop.fraction > 1.0) {
        throw ConfigError("config field datagen.drop_fraction must lie in [0,1]");
      }
      d.gen.nonmatch_drop = drop;
    }
  } else {
    d.gen.left_sample.size =
        static_cast<std::size_t>(doc.get_number("datagen", "left_size"));
    d.gen.right_sample.size =
        static_cast<std::size_t>(doc.get_number("datagen", "right_size"));
    parse_ratios(doc, "left_ratios", d.gen.left_sample);
    parse_ratios(doc, "right_ratios", d.gen.right_sample);
  }
  d.gen = with_recipe_defaults(d.gen);
  return d;
}

}  // namespace

RunConfig interpret_config(const conf::Document& doc) {
  RunConfig config;
  config.universe = parse_universe(doc);

  config.pairs_path = doc.get_string_or("data", "pairs", "");
  config.left_path = doc.get_string_or("data", "left", "");
  config.right_path = doc.get_string_or("data", "right", "");

  config.audit.mode = parse_mode(doc.get_string_or("audit", "mode", "single"));
  parse_target_selection(doc, config.audit);
  config.audit.pure_setwise = doc.get_bool_or("audit", "pure_setwise", false);
  config.audit.measures = parse_measures(doc);
  config.audit.disparity = parse_disparity(doc);
  if (doc.has("audit", "threshold")) {
    double t = doc.get_number("audit", "threshold");
    if (t < 0.0 || t > 1.0) throw ConfigError("config field audit.threshold must lie in [0,1]");
    config.audit.threshold = t;
  }
  config.audit.output_prefix = doc.get_string_or("audit", "output", "report");

  config.has_matcher = doc.has_section("matcher");
  if (config.has_matcher) config.matcher = parse_matcher(doc);

  config.has_sweep = doc.has_section("sweep");
  if (config.has_sweep) {
    auto measure = parse_measure(doc.get_string_or("sweep", "measure", "TPRP"));
    if (!measure) throw ConfigError("config field sweep.measure: unknown measure");
    config.sweep.measure = *measure;
    config.sweep.thresholds = parse_thresholds(doc);
    config.sweep.mean_abs = doc.get_bool_or("sweep", "mean_abs", false);
    config.sweep.output_prefix = doc.get_string_or("sweep", "output", "sweep");
  }

  config.has_datagen = doc.has_section("datagen");
  if (config.has_datagen) config.datagen = parse_datagen(doc);

  return config;
}

RunConfig load_run_config(const std::string& path) {
  return interpret_config(conf::Document::parse_file(path));
}

std::vector<AuditTarget> build_targets(const RunConfig& config) {
  std::vector<GroupEncoding> groups;
  if (config.audit.level) {
    groups = config.universe.level_subgroups(*config.audit.level, config.audit.pure_setwise);
  } else {
    for (const auto& spec : config.audit.explicit_targets) {
      groups.push_back(config.universe.encode(split(spec, '+')));
    }
  }

  std::vector<AuditTarget> targets;
  if (config.audit.mode != RunMode::Pairwise) {
    for (const auto& g : groups) targets.push_back(AuditTarget::single(g));
  }
  if (config.audit.mode != RunMode::Single) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i; j < groups.size(); ++j) {
        targets.push_back(AuditTarget::pairwise(groups[i], groups[j]));
      }
    }
  }
  return targets;
}

std::vector<MeasureId> effective_measures(const AuditSettings& audit) {
  if (!audit.measures.empty()) return audit.measures;
  std::vector<MeasureId> out;
  for (const auto& m : all_measures()) out.push_back(m.id);
  return out;
}

}  // namespace emaudit
