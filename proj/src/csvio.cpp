#include "vcmass/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace vcmass {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvDocument::CsvDocument(std::string description, std::vector<std::string> columns)
    : description_(std::move(description)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("CsvDocument: no columns");
}

void CsvDocument::note(const std::string& key, const std::string& value) {
  notes_.push_back(key + ": " + value);
}

void CsvDocument::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(cells);
}

void CsvDocument::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("CsvDocument: row width does not match columns");
  rows_.push_back(cells);
}

std::string CsvDocument::render() const {
  std::string out = "# " + description_ + "\n";
  for (const std::string& n : notes_) out += "# " + n + "\n";
  for (size_t j = 0; j < columns_.size(); ++j)
    out += (j ? "," : "") + columns_[j];
  out += "\n";
  for (const auto& row : rows_) {
    for (size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + row[j];
    out += "\n";
  }
  return out;
}

void CsvDocument::write(const std::filesystem::path& path) const {
  write_text_atomic(path, render());
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  // Same-directory temp name keeps the final rename atomic on POSIX.
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.flush()) throw std::ios_base::failure("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace vcmass
