#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emaudit {

// In-memory entity table: header `id,<attr1>,<attr2>,...` with string cells.
struct EntityTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(std::string_view name) const;  // throws MissingColumn
  const std::string& cell(std::size_t row, std::size_t col) const { return rows[row][col]; }

  // id -> row index. Throws on duplicate ids.
  std::unordered_map<std::string, std::size_t> id_index() const;
};

EntityTable load_entity_table(std::istream& in);
EntityTable load_entity_table_file(const std::string& path);
void save_entity_table(std::ostream& out, const EntityTable& table);
void save_entity_table_file(const std::string& path, const EntityTable& table);

}  // namespace emaudit
