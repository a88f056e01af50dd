#include "jrc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>

namespace jrc {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CsvTable::CsvTable(std::string schema, int version, std::vector<std::string> header)
    : schema_(std::move(schema)), version_(version), header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CSV header must not be empty");
}

CsvTable::Row& CsvTable::Row::operator<<(const std::string& s) {
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    cells_.push_back(quoted + "\"");
  } else {
    cells_.push_back(s);
  }
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(double v) {
  cells_.push_back(format_double(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(long long v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(unsigned long long v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvTable::Row::~Row() noexcept(false) {
  if (std::uncaught_exceptions() == 0) table_.add_row(std::move(cells_));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw std::out_of_range("no CSV column " + name);
  return static_cast<std::size_t>(it - header_.begin());
}

void CsvTable::write(std::ostream& out) const {
  out << "# schema: " << schema_ << "/" << version_ << "\n";
  for (std::size_t c = 0; c < header_.size(); ++c) out << (c ? "," : "") << header_[c];
  out << "\n";
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
    out << "\n";
  }
}

std::string CsvTable::str() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

}  // namespace jrc
