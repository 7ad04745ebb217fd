#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vcmass {

/// Shortest round-trip decimal form of a double (%.12g).
std::string format_number(double v);

/// In-memory CSV document. Metadata travels in leading '#' lines so the
/// data block stays machine-parseable; rendering is deterministic, which
/// makes repeated runs byte-identical.
class CsvDocument {
public:
  CsvDocument(std::string description, std::vector<std::string> columns);

  /// Appends one '# key: value' metadata line below the description.
  void note(const std::string& key, const std::string& value);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);

  std::string render() const;

  /// Renders into `path` atomically: temp file in the same directory, then
  /// rename. Parent directories are created on demand.
  void write(const std::filesystem::path& path) const;

private:
  std::string description_;
  std::vector<std::string> notes_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Atomic whole-file text write (temp + rename), creating parents.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace vcmass
