#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dlab {

/// Shortest round-trip decimal form ('.' separator, locale independent).
std::string format_double(double v);

/// CSV writer: comma separated, LF line endings, no quoting (fields are numeric or identifiers).
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(unsigned long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::string_view v);
  void end_row();

 private:
  void sep();
  std::ofstream out_;
  bool row_open_ = false;
};

}  // namespace dlab
