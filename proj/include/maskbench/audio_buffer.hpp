#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace maskbench {

/// Mono sampled signal. Samples are nominally in [-1, 1]; operations that
/// can push values outside that range (additive masking, noise synthesis)
/// leave them untouched and clipping happens only at WAV-write time.
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 0;

  AudioBuffer() = default;
  AudioBuffer(std::vector<float> s, int rate) : samples(std::move(s)), sample_rate(rate) {}

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Throws InputError unless the buffer has a positive rate and finite samples.
void validate(const AudioBuffer& buffer);

/// Mean square of the samples, computed in double.
double mean_power(const float* samples, std::size_t n);
double mean_power(const AudioBuffer& buffer);

}  // namespace maskbench
