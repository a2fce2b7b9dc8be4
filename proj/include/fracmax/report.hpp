#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracmax::report {

/// Ordered key = value text report with an optional trailing numeric series.
/// Doubles are printed with 17 significant digits so that equal runs give
/// byte-identical files.
class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)) {}

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void series(const std::string& name, const std::vector<double>& values);

  std::string str() const;
  /// Throws io::IoError on failure.
  void write(const std::string& path) const;

 private:
  std::string title_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::pair<std::string, std::vector<double>>> series_;
};

std::string fmt(double v);

}  // namespace fracmax::report
