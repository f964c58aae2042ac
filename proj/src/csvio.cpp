#include "softwall/csvio.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

namespace softwall::csvio {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {
void write_cells(std::ostream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}
}  // namespace

void write_header(std::ostream& os, const std::vector<std::string>& cols) {
  write_cells(os, cols);
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  write_cells(os, cells);
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

}  // namespace softwall::csvio
