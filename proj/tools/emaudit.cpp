#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "emaudit/csv.hpp"
#include "emaudit/datagen.hpp"
#include "emaudit/errors.hpp"
#include "emaudit/report.hpp"
#include "emaudit/run_config.hpp"
#include "emaudit/sensitivity.hpp"

namespace fs = std::filesystem;
using namespace emaudit;

namespace {

struct Overrides {
  std::optional<double> tau;
  std::optional<double> threshold;
  std::optional<std::string> mode;
  std::optional<std::string> measures;
  std::optional<std::string> disparity;
  std::optional<std::string> convention;
  std::optional<std::string> baseline;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool tables_only = false;
};

void apply_audit_overrides(RunConfig& config, const Overrides& o) {
  if (o.tau) {
    if (*o.tau < 0.0) throw ConfigError("--tau must be non-negative");
    config.audit.disparity.tau = *o.tau;
  }
  if (o.threshold) config.audit.threshold = *o.threshold;
  if (o.mode) {
    if (*o.mode == "single") {
      config.audit.mode = RunMode::Single;
    } else if (*o.mode == "pairwise") {
      config.audit.mode = RunMode::Pairwise;
    } else if (*o.mode == "both") {
      config.audit.mode = RunMode::Both;
    } else {
      throw ConfigError("--mode must be single, pairwise or both");
    }
  }
  if (o.measures) {
    config.audit.measures.clear();
    std::string token;
    std::istringstream in(*o.measures);
    while (std::getline(in, token, ',')) {
      if (token == "all") {
        config.audit.measures.clear();
        break;
      }
      auto id = parse_measure(token);
      if (!id) throw ConfigError("--measures: unknown measure '" + token + "'");
      config.audit.measures.push_back(*id);
    }
  }
  if (o.disparity) {
    if (*o.disparity == "sub") {
      config.audit.disparity.op = DisparityOp::Sub;
    } else if (*o.disparity == "div") {
      config.audit.disparity.op = DisparityOp::Div;
    } else {
      throw ConfigError("--disparity must be sub or div");
    }
  }
  if (o.convention) {
    if (*o.convention == "eq") {
      config.audit.disparity.convention = Convention::Equation;
    } else if (*o.convention == "table") {
      config.audit.disparity.convention = Convention::Table;
    } else {
      throw ConfigError("--convention must be eq or table");
    }
  }
  if (o.baseline) {
    if (*o.baseline == "overall") {
      config.audit.disparity.baseline = BaselineKind::Overall;
    } else if (*o.baseline == "complement") {
      config.audit.disparity.baseline = BaselineKind::Complement;
    } else {
      throw ConfigError("--baseline must be overall or complement");
    }
  }
}

std::vector<Correspondence> load_pairs(const RunConfig& config, bool require_prediction) {
  if (config.pairs_path.empty()) throw ConfigError("missing config field: data.pairs");
  FormatConfig format;
  format.require_prediction = require_prediction;
  return load_correspondences_file(config.pairs_path, config.universe, format);
}

int cmd_generate(const std::string& config_path, const Overrides& o) {
  RunConfig config = load_run_config(config_path);
  if (!config.has_datagen) throw ConfigError("missing config section: datagen");
  DatagenSettings settings = config.datagen;
  if (o.seed) settings.gen.seed = *o.seed;
  if (o.out) settings.out_dir = *o.out;
  if (o.tables_only) settings.tables_only = true;

  EntityTable source = load_entity_table_file(settings.source_path);
  DatasetGenerator gen(settings.gen, source);

  fs::create_directories(settings.out_dir);
  fs::path dir(settings.out_dir);
  save_entity_table_file((dir / "left.csv").string(), gen.left());
  save_entity_table_file((dir / "right.csv").string(), gen.right());

  std::size_t pair_count = 0;
  std::size_t match_count = 0;
  if (settings.tables_only) {
    gen.for_each_pair([&](std::size_t, std::size_t, MatchLabel truth) {
      ++pair_count;
      if (truth == MatchLabel::Match) ++match_count;
    });
  } else {
    std::ofstream out(dir / "pairs.csv", std::ios::binary);
    if (!out) throw AuditError("cannot write " + (dir / "pairs.csv").string());
    csv::write_row(out, {"id_left", "id_right", "groups_left", "groups_right", "score",
                         "prediction", "label"});
    std::size_t id_left = gen.left().column_index("id");
    std::size_t id_right = gen.right().column_index("id");
    std::size_t grp_left = gen.left().column_index(settings.gen.sensitive_column);
    std::size_t grp_right = gen.right().column_index(settings.gen.sensitive_column);
    gen.for_each_pair([&](std::size_t l, std::size_t r, MatchLabel truth) {
      ++pair_count;
      if (truth == MatchLabel::Match) ++match_count;
      csv::write_row(out, {gen.left().cell(l, id_left), gen.right().cell(r, id_right),
                           gen.left().cell(l, grp_left), gen.right().cell(r, grp_right), "",
                           "", std::string(1, label_char(truth))});
    });
  }

  std::cout << "generated " << gen.left().rows.size() << " left rows, "
            << gen.right().rows.size() << " right rows, " << pair_count << " pairs ("
            << match_count << " matches) in " << settings.out_dir << "\n";
  return 0;
}

int cmd_match(const std::string& config_path, const Overrides& o) {
  RunConfig config = load_run_config(config_path);
  if (!config.has_matcher) throw ConfigError("missing config section: matcher");
  if (config.left_path.empty()) throw ConfigError("missing config field: data.left");
  if (config.right_path.empty()) throw ConfigError("missing config field: data.right");

  std::string input = config.matcher.input.empty() ? config.pairs_path : config.matcher.input;
  if (input.empty()) throw ConfigError("missing config field: matcher.input (or data.pairs)");
  FormatConfig format;
  format.require_prediction = false;
  auto cs = load_correspondences_file(input, config.universe, format);
  EntityTable left = load_entity_table_file(config.left_path);
  EntityTable right = load_entity_table_file(config.right_path);

  if (!config.matcher.scorer.features.empty()) {
    cs = score_correspondences(std::move(cs), left, right, config.matcher.scorer,
                               config.matcher.similarity);
  }
  if (!config.matcher.rules.clauses.empty()) {
    cs = apply_rules(std::move(cs), left, right, config.matcher.rules,
                     config.matcher.similarity);
  } else if (o.threshold) {
    cs = with_decisions(std::move(cs), o.threshold);
  }

  std::ofstream out(config.matcher.output, std::ios::binary);
  if (!out) throw AuditError("cannot write " + config.matcher.output);
  save_correspondences(out, cs, config.universe);
  std::size_t matches = 0;
  for (const auto& c : cs) {
    if (c.decision && *c.decision == MatchLabel::Match) ++matches;
  }
  std::cout << "matched " << cs.size() << " pairs, " << matches << " predicted matches -> "
            << config.matcher.output << "\n";
  return 0;
}

int cmd_audit(const std::string& config_path, const Overrides& o) {
  RunConfig config = load_run_config(config_path);
  apply_audit_overrides(config, o);

  auto cs = with_decisions(load_pairs(config, /*require_prediction=*/true),
                           config.audit.threshold);
  auto targets = build_targets(config);
  auto measures = effective_measures(config.audit);
  AuditReport report =
      run_audit(cs, targets, measures, config.audit.disparity, &config.universe);

  nlohmann::json doc = report_to_json(report, config.universe);
  {
    std::ofstream out(config.audit.output_prefix + ".json", std::ios::binary);
    if (!out) throw AuditError("cannot write " + config.audit.output_prefix + ".json");
    out << doc.dump(2) << "\n";
  }
  {
    std::ofstream out(config.audit.output_prefix + ".csv", std::ios::binary);
    if (!out) throw AuditError("cannot write " + config.audit.output_prefix + ".csv");
    write_report_csv(out, report, config.universe);
  }

  std::cout << render_grid(doc);
  std::size_t flagged =
      report.discriminated_single.size() + report.discriminated_pairwise.size();
  std::cout << "\n" << flagged << " discriminated target(s); reports at "
            << config.audit.output_prefix << ".{json,csv}\n";
  return flagged == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const Overrides& o) {
  RunConfig config = load_run_config(config_path);
  apply_audit_overrides(config, o);
  if (!config.has_sweep) throw ConfigError("missing config section: sweep");

  auto cs = load_pairs(config, /*require_prediction=*/true);
  auto targets = build_targets(config);
  std::vector<double> thresholds = config.sweep.thresholds.empty()
                                       ? default_threshold_grid()
                                       : config.sweep.thresholds;
  SweepResult result = sweep(cs, thresholds, targets, config.sweep.measure,
                             config.audit.disparity, &config.universe);

  nlohmann::json doc = sweep_to_json(result, config.sweep.mean_abs);
  {
    std::ofstream out(config.sweep.output_prefix + ".json", std::ios::binary);
    if (!out) throw AuditError("cannot write " + config.sweep.output_prefix + ".json");
    out << doc.dump(2) << "\n";
  }
  {
    std::ofstream out(config.sweep.output_prefix + ".csv", std::ios::binary);
    if (!out) throw AuditError("cannot write " + config.sweep.output_prefix + ".csv");
    write_sweep_csv(out, result);
  }

  std::cout << "swept " << thresholds.size() << " thresholds; sensitivity l2 = "
            << doc["sensitivity"]["l2"].dump() << "; outputs at "
            << config.sweep.output_prefix << ".{json,csv}\n";
  return 0;
}

int cmd_report(const std::string& input_path) {
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw AuditError("cannot open report: " + input_path);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::cout << render_grid(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) try {
  CLI::App app{"emaudit - group-fairness auditing for entity matching"};
  app.require_subcommand(1);

  std::string config_path;
  std::string report_path;
  Overrides o;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "run configuration file")->required();
  };
  auto add_audit_flags = [&](CLI::App* cmd) {
    cmd->add_option_function<double>(
        "--tau", [&](double v) { o.tau = v; }, "fairness threshold");
    cmd->add_option_function<double>(
        "--threshold", [&](double v) { o.threshold = v; }, "matching threshold override");
    cmd->add_option_function<std::string>(
        "--mode", [&](const std::string& v) { o.mode = v; }, "single|pairwise|both");
    cmd->add_option_function<std::string>(
        "--measures", [&](const std::string& v) { o.measures = v; },
        "comma-separated measure list or 'all'");
    cmd->add_option_function<std::string>(
        "--disparity", [&](const std::string& v) { o.disparity = v; }, "sub|div");
    cmd->add_option_function<std::string>(
        "--convention", [&](const std::string& v) { o.convention = v; }, "eq|table");
    cmd->add_option_function<std::string>(
        "--baseline", [&](const std::string& v) { o.baseline = v; }, "overall|complement");
  };

  auto* generate = app.add_subcommand("generate", "generate a semi-synthetic dataset");
  add_config(generate);
  generate->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { o.seed = v; }, "generator seed");
  generate->add_option_function<std::string>(
      "--out", [&](const std::string& v) { o.out = v; }, "output directory");
  generate->add_flag("--tables-only", o.tables_only,
                     "write entity tables but skip the pair file");

  auto* match = app.add_subcommand("match", "fill predictions with the built-in matcher");
  add_config(match);
  match->add_option_function<double>(
      "--threshold", [&](double v) { o.threshold = v; }, "derive predictions from scores");

  auto* audit = app.add_subcommand("audit", "audit predictions for group fairness");
  add_config(audit);
  add_audit_flags(audit);

  auto* sweep_cmd = app.add_subcommand("sweep", "matching-threshold sensitivity sweep");
  add_config(sweep_cmd);
  add_audit_flags(sweep_cmd);

  auto* report = app.add_subcommand("report", "re-render the text grid from report.json");
  report->add_option("-i,--in", report_path, "report.json path")->required();

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return cmd_generate(config_path, o);
    if (match->parsed()) return cmd_match(config_path, o);
    if (audit->parsed()) return cmd_audit(config_path, o);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, o);
    if (report->parsed()) return cmd_report(report_path);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
} catch (const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 2;
} catch (...) {
  std::cerr << "error: unexpected failure\n";
  return 2;
}
