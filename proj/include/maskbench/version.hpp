#pragma once

namespace maskbench {

inline constexpr const char* kToolName = "maskbench";
inline constexpr const char* kVersion = "0.1.0";

/// Schema version of the JSON run report. Bump on breaking report changes.
inline constexpr int kReportSchemaVersion = 1;

/// Default RNG seed when neither --seed nor MASKBENCH_SEED is given.
/// A fixed constant, never wall-clock time: runs must be reproducible.
inline constexpr unsigned long long kDefaultSeed = 42;

}  // namespace maskbench
