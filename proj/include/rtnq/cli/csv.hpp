#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace rtnq::cli {

/// 17 significant digits: parses back to the identical double.
std::string format_double(double x);

/// Comma-separated file with one header row, LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  void row(std::initializer_list<double> values);
  void close();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

}  // namespace rtnq::cli
