#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace emaudit::csv {

// Minimal RFC-4180 reader: comma separator, double-quote quoting, CRLF
// tolerant. Returns false at end of stream. `line` is advanced past the
// consumed physical lines (quoted fields may span several).
bool read_row(std::istream& in, std::vector<std::string>& fields, std::size_t& line);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace emaudit::csv
