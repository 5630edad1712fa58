#include "tuav/csv.hpp"

#include <cstdio>
#include <sstream>

namespace tuav {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {
std::string cell_to_string(const CsvCell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  return std::get<std::string>(c);
}
}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& c : table.comments) {
    // Multi-line comments become one '#' line each.
    std::istringstream lines(c);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  for (size_t i = 0; i < table.header.size(); ++i)
    out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << cell_to_string(row[i]) << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
}

std::string to_csv_string(const CsvTable& table) {
  std::ostringstream ss;
  write_csv(ss, table);
  return ss.str();
}

}  // namespace tuav
