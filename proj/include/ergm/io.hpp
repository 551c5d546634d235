#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ergm {

// CSV with an LF-terminated schema comment on row 1 and a header row. Values
// are printed with %.17g so identical runs produce byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& schema,
            const std::vector<std::string>& columns);
  void write_row(const std::vector<double>& values);
  void write_raw_row(const std::vector<std::string>& cells);

  static std::string format(double v);

 private:
  std::ofstream out_;
  std::size_t column_count_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Run manifest: resolved config echo, seed, wall clock, schema version.
nlohmann::json make_manifest(const nlohmann::json& resolved_config, std::uint64_t seed,
                             double wall_seconds);

}  // namespace ergm
