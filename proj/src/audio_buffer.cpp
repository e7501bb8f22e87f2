#include "maskbench/audio_buffer.hpp"

#include <cmath>

#include "maskbench/errors.hpp"

namespace maskbench {

void validate(const AudioBuffer& buffer) {
  if (buffer.sample_rate <= 0) {
    throw InputError("audio buffer has non-positive sample rate");
  }
  for (float s : buffer.samples) {
    if (!std::isfinite(s)) {
      throw InputError("audio buffer contains non-finite samples");
    }
  }
}

double mean_power(const float* samples, std::size_t n) {
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(samples[i]) * samples[i];
  }
  return acc / static_cast<double>(n);
}

double mean_power(const AudioBuffer& buffer) {
  return mean_power(buffer.samples.data(), buffer.samples.size());
}

}  // namespace maskbench
