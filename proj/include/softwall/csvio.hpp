#pragma once

// CSV output: '.' decimal separator, 9 significant digits, header row,
// LF line endings.  Formatting is locale-independent and stable, so
// identical runs produce identical bytes.

#include <ostream>
#include <string>
#include <vector>

namespace softwall::csvio {

// %.9g with the C locale.
std::string format_g9(double v);

void write_header(std::ostream& os, const std::vector<std::string>& cols);
void write_row(std::ostream& os, const std::vector<std::string>& cells);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal reader for round-trip checks (no quoting; our output never
// needs it).
Table read_csv(std::istream& is);

}  // namespace softwall::csvio
