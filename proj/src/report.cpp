#include "maskbench/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "maskbench/digest.hpp"
#include "maskbench/errors.hpp"
#include "maskbench/version.hpp"

namespace maskbench {

RunReport::RunReport(const std::string& command, std::uint64_t seed) {
  doc_["schema_version"] = kReportSchemaVersion;
  doc_["tool"] = kToolName;
  doc_["tool_version"] = kVersion;
  doc_["command"] = command;
  doc_["seed"] = seed;
  doc_["inputs"] = nlohmann::json::array();
  doc_["results"] = nlohmann::json::object();
}

void RunReport::add_input(const std::string& path) {
  nlohmann::json entry;
  entry["path"] = path;
  entry["fnv1a64"] = to_hex(digest_file(path));
  doc_["inputs"].push_back(entry);
}

void RunReport::set_result(const std::string& key, const nlohmann::json& value) {
  doc_["results"][key] = value;
}

void RunReport::set_timing_ms(double ms) { doc_["timing_ms"] = ms; }

std::string RunReport::to_string() const { return doc_.dump(2) + "\n"; }

void RunReport::write(const std::string& out_path) const {
  if (out_path.empty() || out_path == "-") {
    std::cout << to_string();
    std::cout.flush();
    return;
  }
  write_file_atomic(out_path, to_string());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open for writing: " + tmp);
    out << contents;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw InputError("failed writing: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InputError("cannot move temp file into place at: " + path);
  }
}

}  // namespace maskbench
