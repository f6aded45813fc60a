#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emaudit::conf {

// Declarative run-configuration file: '[section]' headers and 'key = value'
// entries, TOML-style scalars (quoted strings, numbers, booleans) and
// single-line arrays, '#' comments. Nested tables, dates and multi-line
// values are not part of the dialect.
struct Value {
  enum class Type { String, Number, Boolean, Array };
  Type type = Type::String;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<Value> items;
};

class Document {
 public:
  static Document parse(std::istream& in);
  static Document parse_file(const std::string& path);

  bool has_section(std::string_view section) const;
  bool has(std::string_view section, std::string_view key) const;
  const Value* find(std::string_view section, std::string_view key) const;

  // Typed getters; the *_or variants fall back, the required variants throw
  // ConfigError naming "<section>.<key>".
  std::string get_string(std::string_view section, std::string_view key) const;
  std::string get_string_or(std::string_view section, std::string_view key,
                            std::string fallback) const;
  double get_number(std::string_view section, std::string_view key) const;
  double get_number_or(std::string_view section, std::string_view key, double fallback) const;
  bool get_bool_or(std::string_view section, std::string_view key, bool fallback) const;
  std::vector<std::string> get_strings(std::string_view section, std::string_view key) const;
  std::vector<double> get_numbers(std::string_view section, std::string_view key) const;

 private:
  std::map<std::string, std::map<std::string, Value>, std::less<>> sections_;
};

}  // namespace emaudit::conf
