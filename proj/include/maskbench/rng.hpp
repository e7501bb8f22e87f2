#pragma once

#include <cstdint>
#include <random>

namespace maskbench {

/// Deterministic random stream. Gaussian draws use an explicit Box-Muller
/// transform on mt19937_64 output instead of std::normal_distribution, whose
/// sequence is implementation-defined; this keeps seeded output bit-stable
/// across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw.
  double gaussian();

  /// Derive an independent stream seed, e.g. one per masked span. splitmix64
  /// finalizer over (seed, stream) so neighbouring streams are uncorrelated.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace maskbench
