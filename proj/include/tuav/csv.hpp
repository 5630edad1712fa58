#pragma once
// CSV emission: one header row, '#' comment lines carrying the resolved
// configuration and seed, floats at 9 significant digits, '\n' line ends.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tuav {

using CsvCell = std::variant<std::string, double, long long>;

struct CsvTable {
  std::vector<std::string> comments;  // emitted as leading '# ' lines
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

std::string format_double(double v);  // %.9g
void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);

}  // namespace tuav
