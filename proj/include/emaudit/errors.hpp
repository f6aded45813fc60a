#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emaudit {

// Base class for every domain error raised by the library.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGroupValue : public AuditError {
 public:
  explicit UnknownGroupValue(const std::string& value)
      : AuditError("unknown group value: '" + value + "'"), value_(value) {}
  const std::string& value() const { return value_; }

 private:
  std::string value_;
};

class LengthMismatch : public AuditError {
 public:
  LengthMismatch(std::size_t lhs, std::size_t rhs)
      : AuditError("group encoding length mismatch: " + std::to_string(lhs) +
                   " vs " + std::to_string(rhs)) {}
};

class ParseError : public AuditError {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : AuditError("line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MissingColumn : public AuditError {
 public:
  explicit MissingColumn(const std::string& column)
      : AuditError("missing column: '" + column + "'"), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class MissingDecision : public AuditError {
 public:
  using AuditError::AuditError;
};

class MissingScore : public AuditError {
 public:
  using AuditError::AuditError;
};

class MissingAttribute : public AuditError {
 public:
  explicit MissingAttribute(const std::string& attribute)
      : AuditError("missing attribute: '" + attribute + "'") {}
};

class UndefinedRatio : public AuditError {
 public:
  UndefinedRatio() : AuditError("ratio disparity undefined: denominator is zero") {}
};

class TooFewThresholds : public AuditError {
 public:
  TooFewThresholds() : AuditError("sensitivity needs at least two threshold points") {}
};

class InsufficientSourceRows : public AuditError {
 public:
  InsufficientSourceRows(const std::string& group, std::size_t want, std::size_t have)
      : AuditError("group '" + group + "' cannot fill its quota: need " +
                   std::to_string(want) + " rows, source has " +
                   std::to_string(have)) {}
};

class ConfigError : public AuditError {
 public:
  using AuditError::AuditError;
};

}  // namespace emaudit
