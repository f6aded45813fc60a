#include "emaudit/conf.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "emaudit/errors.hpp"

namespace emaudit::conf {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

// Drops a trailing '# ...' comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

Value parse_scalar(std::string_view text, std::size_t line_no) {
  Value v;
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    v.type = Value::Type::String;
    v.str = std::string(text.substr(1, text.size() - 2));
    return v;
  }
  if (text == "true" || text == "false") {
    v.type = Value::Type::Boolean;
    v.boolean = text == "true";
    return v;
  }
  double num = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), num);
  if (ec == std::errc{} && ptr == text.data() + text.size()) {
    v.type = Value::Type::Number;
    v.num = num;
    return v;
  }
  throw ParseError(line_no, "cannot parse value '" + std::string(text) +
                                "' (strings need double quotes)");
}

Value parse_value(std::string_view text, std::size_t line_no) {
  text = trim(text);
  if (text.empty()) throw ParseError(line_no, "missing value");
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError(line_no, "unterminated array");
    Value v;
    v.type = Value::Type::Array;
    std::string_view body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '"') quoted = !quoted;
      if (i == body.size() || (body[i] == ',' && !quoted)) {
        std::string_view item = trim(body.substr(start, i - start));
        if (!item.empty()) v.items.push_back(parse_scalar(item, line_no));
        start = i + 1;
      }
    }
    return v;
  }
  return parse_scalar(text, line_no);
}

}  // namespace

Document Document::parse(std::istream& in) {
  Document doc;
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(line_no, "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      doc.sections_[section];
      continue;
    }
    std::size_t eq = std::string_view::npos;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '=' && !quoted) {
        eq = i;
        break;
      }
    }
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    doc.sections_[section][key] = parse_value(line.substr(eq + 1), line_no);
  }
  return doc;
}

Document Document::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

bool Document::has_section(std::string_view section) const {
  return sections_.find(section) != sections_.end();
}

bool Document::has(std::string_view section, std::string_view key) const {
  return find(section, key) != nullptr;
}

const Value* Document::find(std::string_view section, std::string_view key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  auto kit = sit->second.find(std::string(key));
  return kit == sit->second.end() ? nullptr : &kit->second;
}

namespace {

[[noreturn]] void missing(std::string_view section, std::string_view key) {
  throw ConfigError("missing config field: " + std::string(section) + "." +
                    std::string(key));
}

[[noreturn]] void wrong_type(std::string_view section, std::string_view key,
                             std::string_view want) {
  throw ConfigError("config field " + std::string(section) + "." + std::string(key) +
                    " must be a " + std::string(want));
}

}  // namespace

std::string Document::get_string(std::string_view section, std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) missing(section, key);
  if (v->type != Value::Type::String) wrong_type(section, key, "string");
  return v->str;
}

std::string Document::get_string_or(std::string_view section, std::string_view key,
                                    std::string fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (v->type != Value::Type::String) wrong_type(section, key, "string");
  return v->str;
}

double Document::get_number(std::string_view section, std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) missing(section, key);
  if (v->type != Value::Type::Number) wrong_type(section, key, "number");
  return v->num;
}

double Document::get_number_or(std::string_view section, std::string_view key,
                               double fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (v->type != Value::Type::Number) wrong_type(section, key, "number");
  return v->num;
}

bool Document::get_bool_or(std::string_view section, std::string_view key,
                           bool fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (v->type != Value::Type::Boolean) wrong_type(section, key, "boolean");
  return v->boolean;
}

std::vector<std::string> Document::get_strings(std::string_view section,
                                               std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) missing(section, key);
  if (v->type == Value::Type::String) return {v->str};
  if (v->type != Value::Type::Array) wrong_type(section, key, "string array");
  std::vector<std::string> out;
  for (const auto& item : v->items) {
    if (item.type != Value::Type::String) wrong_type(section, key, "string array");
    out.push_back(item.str);
  }
  return out;
}

std::vector<double> Document::get_numbers(std::string_view section,
                                          std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) missing(section, key);
  if (v->type == Value::Type::Number) return {v->num};
  if (v->type != Value::Type::Array) wrong_type(section, key, "number array");
  std::vector<double> out;
  for (const auto& item : v->items) {
    if (item.type != Value::Type::Number) wrong_type(section, key, "number array");
    out.push_back(item.num);
  }
  return out;
}

}  // namespace emaudit::conf
