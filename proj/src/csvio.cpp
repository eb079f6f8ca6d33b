#include "besr/csvio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace besr {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

} // namespace

std::optional<size_t> Table::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  return std::nullopt;
}

const std::string* Table::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return &v;
  return nullptr;
}

void Table::add_row(std::initializer_list<double> vals) {
  rows.emplace_back(vals);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CsvError(path + ": cannot open for writing");
    out << content;
    if (!out.good()) throw CsvError(path + ": write failed");
  }
  fs::rename(tmp, target);
}

void write_csv(const std::string& path, const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.meta) out += "# " + k + " = " + v + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i)
    out += (i ? "," : "") + t.columns[i];
  out += "\n";
  char buf[64];
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw CsvError(path + ": row width does not match header");
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out += ",";
      out += buf;
    }
    out += "\n";
  }
  write_text_atomic(path, out);
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open");
  Table t;
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const size_t eq = body.find('=');
      if (eq != std::string::npos)
        t.meta.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      continue;
    }
    if (!have_header) {
      t.columns = split_commas(line);
      for (const auto& c : t.columns)
        if (c.empty())
          throw CsvError(path + ":" + std::to_string(lineno) + ": empty column name");
      have_header = true;
      continue;
    }
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != t.columns.size())
      throw CsvError(path + ":" + std::to_string(lineno) + ": expected " +
                     std::to_string(t.columns.size()) + " cells, got " +
                     std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw CsvError(path + ":" + std::to_string(lineno) +
                       ": invalid number '" + cell + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header)
    throw CsvError(path + ": no column header found");
  return t;
}

} // namespace besr
