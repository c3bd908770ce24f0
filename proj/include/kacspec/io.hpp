#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace kacspec::io {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits, '.' decimal point, locale independent.
std::string fmt(double v);

// CSV with '# key=value' metadata lines, then a header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace kacspec::io
