#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "emaudit/audit.hpp"
#include "emaudit/sensitivity.hpp"

namespace emaudit {

// Full-precision JSON document for an audit report. Key order is canonical
// (alphabetical), so equal reports serialize byte-identically.
nlohmann::json report_to_json(const AuditReport& report, const GroupUniverse& universe);

// Two-decimal CSV table:
//   mode,target,measure,value,baseline,disparity,applicable,unfair
void write_report_csv(std::ostream& out, const AuditReport& report,
                      const GroupUniverse& universe);

// Text grid per fairness mode: rows are measures, columns are targets, 'X'
// marks an unfair cell, '.' a fair one, '-' an inapplicable one.
std::string render_grid(const nlohmann::json& report);
std::string render_grid(const AuditReport& report, const GroupUniverse& universe);

nlohmann::json sweep_to_json(const SweepResult& sweep, bool include_mean_abs);

// Heat-map CSV: a threshold header row, then one row per swept measure with
// "unfair_count:utility" cells.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace emaudit
