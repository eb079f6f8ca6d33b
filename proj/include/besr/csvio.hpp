#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace besr {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric table with '#'-comment metadata. Meta pairs round-trip as
// "# key = value" lines above the column header.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::optional<size_t> column(const std::string& name) const;
  const std::string* meta_value(const std::string& key) const;
  void add_row(std::initializer_list<double> vals);
};

// full-precision emit; the write goes to a temp file first and renames over
// the target so readers never see a partial file
void write_csv(const std::string& path, const Table& t);

Table read_csv(const std::string& path);

void write_text_atomic(const std::string& path, const std::string& content);

} // namespace besr
