#include "ergm/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace ergm {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& schema,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), column_count_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string());
  out_ << "# schema: " << schema << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::write_row(const std::vector<double>& values) {
  if (values.size() != column_count_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format(values[i]);
  out_ << "\n";
}

void CsvWriter::write_raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != column_count_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << "\n";
}

nlohmann::json make_manifest(const nlohmann::json& resolved_config, std::uint64_t seed,
                             double wall_seconds) {
  nlohmann::json m;
  m["config"] = resolved_config;
  m["seed"] = seed;
  m["wall_clock_seconds"] = wall_seconds;
  m["schema_version"] = "ergm.manifest.v1";
  return m;
}

}  // namespace ergm
