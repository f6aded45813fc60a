#include "emaudit/table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "emaudit/csv.hpp"
#include "emaudit/errors.hpp"

namespace emaudit {

std::size_t EntityTable::column_index(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw MissingColumn(std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

std::unordered_map<std::string, std::size_t> EntityTable::id_index() const {
  std::size_t id_col = column_index("id");
  std::unordered_map<std::string, std::size_t> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!out.emplace(rows[r][id_col], r).second) {
      throw AuditError("duplicate entity id: '" + rows[r][id_col] + "'");
    }
  }
  return out;
}

EntityTable load_entity_table(std::istream& in) {
  EntityTable table;
  std::size_t line = 0;
  if (!csv::read_row(in, table.columns, line)) {
    throw ParseError(1, "empty entity table (header expected)");
  }
  if (std::find(table.columns.begin(), table.columns.end(), "id") == table.columns.end()) {
    throw MissingColumn("id");
  }
  std::vector<std::string> fields;
  while (csv::read_row(in, fields, line)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != table.columns.size()) {
      throw ParseError(line, "expected " + std::to_string(table.columns.size()) +
                                 " fields, got " + std::to_string(fields.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

EntityTable load_entity_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError("cannot open entity table: " + path);
  return load_entity_table(in);
}

void save_entity_table(std::ostream& out, const EntityTable& table) {
  csv::write_row(out, table.columns);
  for (const auto& row : table.rows) {
    csv::write_row(out, row);
  }
}

void save_entity_table_file(const std::string& path, const EntityTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AuditError("cannot write entity table: " + path);
  save_entity_table(out, table);
}

}  // namespace emaudit
