#include "maskbench/resample.hpp"

#include <cmath>
#include <vector>

#include "maskbench/errors.hpp"

namespace maskbench {

namespace {

constexpr int kHalfTaps = 32;  // 64-tap kernel
constexpr double kRolloff = 0.95;

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer resample(const AudioBuffer& buffer, int target_rate) {
  if (target_rate <= 0) {
    throw InputError("resample target rate must be positive");
  }
  validate(buffer);
  if (target_rate == buffer.sample_rate) {
    return buffer;
  }

  const std::size_t n_in = buffer.samples.size();
  const double step = static_cast<double>(buffer.sample_rate) / target_rate;
  const std::size_t n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * target_rate / buffer.sample_rate));

  // Cutoff in input-normalized frequency; the kernel dilates when
  // downsampling so the stopband lands below the output Nyquist.
  const double ratio = 1.0 / step;
  const double cutoff = 0.5 * std::min(1.0, ratio) * kRolloff;
  const double half_width = kHalfTaps / (2.0 * cutoff);

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.resize(n_out);

  for (std::size_t j = 0; j < n_out; ++j) {
    const double t = static_cast<double>(j) * step;
    const auto lo = static_cast<long long>(std::ceil(t - half_width));
    const auto hi = static_cast<long long>(std::floor(t + half_width));
    double acc = 0.0;
    for (long long i = lo; i <= hi; ++i) {
      if (i < 0 || i >= static_cast<long long>(n_in)) continue;
      const double u = t - static_cast<double>(i);
      // Hann-windowed sinc.
      const double w = 0.5 + 0.5 * std::cos(M_PI * u / half_width);
      acc += static_cast<double>(buffer.samples[static_cast<std::size_t>(i)]) * 2.0 * cutoff *
             sinc(2.0 * cutoff * u) * w;
    }
    out.samples[j] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace maskbench
