#include "fracmax/report.hpp"

#include <cstdio>
#include <fstream>

#include "fracmax/io.hpp"

namespace fracmax::report {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { entries_.emplace_back(key, fmt(value)); }
void Report::add(const std::string& key, long long value) { entries_.emplace_back(key, std::to_string(value)); }
void Report::series(const std::string& name, const std::vector<double>& values) { series_.emplace_back(name, values); }

std::string Report::str() const {
  std::string out = "# " + title_ + "\n";
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  for (const auto& [name, values] : series_) {
    out += name + ":\n";
    for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i) + " " + fmt(values[i]) + "\n";
  }
  return out;
}

void Report::write(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io::IoError("cannot open " + path + " for writing");
  out << str();
  if (!out) throw io::IoError("write failed for " + path);
}

}  // namespace fracmax::report
