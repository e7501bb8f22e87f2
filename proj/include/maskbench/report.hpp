#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace maskbench {

/// Machine-readable run report. Every number in it is reproducible from the
/// recorded inputs and seed; input files are identified by content digest.
class RunReport {
 public:
  RunReport(const std::string& command, std::uint64_t seed);

  void add_input(const std::string& path);
  void set_result(const std::string& key, const nlohmann::json& value);
  void set_timing_ms(double ms);

  const nlohmann::json& json() const { return doc_; }
  std::string to_string() const;  // pretty-printed, trailing newline

  /// Write to path ("-" or empty = stdout). Uses a temp-file rename so a
  /// failed run never leaves a partial report.
  void write(const std::string& out_path) const;

 private:
  nlohmann::json doc_;
};

/// Atomic-ish file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace maskbench
