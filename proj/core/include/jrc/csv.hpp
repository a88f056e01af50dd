#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace jrc {

/// In-memory CSV table. The first output line is "# schema: <name>/<version>",
/// followed by the header; every row must match the header width.
class CsvTable {
 public:
  CsvTable(std::string schema, int version, std::vector<std::string> header);

  class Row {
   public:
    Row& operator<<(const std::string& s);
    Row& operator<<(const char* s) { return *this << std::string(s); }
    Row& operator<<(double v);
    Row& operator<<(long long v);
    Row& operator<<(unsigned long long v);
    Row& operator<<(int v) { return *this << static_cast<long long>(v); }
    Row& operator<<(long v) { return *this << static_cast<long long>(v); }
    Row& operator<<(unsigned long v) { return *this << static_cast<unsigned long long>(v); }
    Row& operator<<(bool v) { return *this << static_cast<long long>(v ? 1 : 0); }
    ~Row() noexcept(false);

   private:
    friend class CsvTable;
    explicit Row(CsvTable& table) : table_(table) {}
    CsvTable& table_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }
  void add_row(std::vector<std::string> cells);

  const std::string& schema() const { return schema_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t column(const std::string& name) const;

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::string schema_;
  int version_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

}  // namespace jrc
