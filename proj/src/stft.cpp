#include "maskbench/stft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maskbench/errors.hpp"
#include "maskbench/fft.hpp"

namespace maskbench {

std::vector<double> make_window(Window window, int length) {
  std::vector<double> w(static_cast<std::size_t>(length));
  switch (window) {
    case Window::hann:
      for (int i = 0; i < length; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / length);  // periodic
      }
      break;
    case Window::hamming:
      for (int i = 0; i < length; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / length);
      }
      break;
    case Window::rect:
      std::fill(w.begin(), w.end(), 1.0);
      break;
  }
  return w;
}

StftConfig default_stft_config(int sample_rate) {
  if (sample_rate <= 0) {
    throw InputError("default_stft_config: sample rate must be positive");
  }
  StftConfig cfg;
  cfg.frame_len = static_cast<int>(std::lround(0.025 * sample_rate));
  cfg.hop = static_cast<int>(std::lround(0.010 * sample_rate));
  int fft = 1;
  while (fft < cfg.frame_len) fft <<= 1;
  cfg.fft_len = fft;
  cfg.window = Window::hann;
  return cfg;
}

void validate(const StftConfig& config) {
  if (!(0 < config.hop && config.hop <= config.frame_len &&
        config.frame_len <= config.fft_len)) {
    throw InputError("stft config must satisfy 0 < hop <= frame_len <= fft_len (got hop=" +
                     std::to_string(config.hop) + " frame=" + std::to_string(config.frame_len) +
                     " fft=" + std::to_string(config.fft_len) + ")");
  }
  // Steady-state squared-window overlap sum must stay positive, otherwise
  // normalized overlap-add cannot reconstruct those samples.
  const auto w = make_window(config.window, config.frame_len);
  const int period = config.hop;
  double min_sum = 1e300, max_sum = 0.0;
  for (int p = 0; p < period; ++p) {
    double s = 0.0;
    for (int q = p; q < config.frame_len; q += config.hop) {
      s += w[q] * w[q];
    }
    min_sum = std::min(min_sum, s);
    max_sum = std::max(max_sum, s);
  }
  if (!(max_sum > 0.0) || min_sum < 1e-6 * max_sum) {
    throw InputError("window/hop combination leaves overlap-add gaps; reduce the hop");
  }
}

namespace {

// Reflect-padded sample lookup: pad/2 frame of mirror at each end, zeros
// beyond what the mirror can supply.
double padded_sample(const AudioBuffer& x, long long idx, int pad) {
  const auto n = static_cast<long long>(x.samples.size());
  long long i = idx - pad;
  if (i < 0) i = -i;                      // reflect without repeating edge
  if (i >= n) i = 2 * (n - 1) - i;        // right mirror
  if (i < 0 || i >= n) return 0.0;        // beyond a short signal's mirror
  return x.samples[static_cast<std::size_t>(i)];
}

}  // namespace

Spectrogram stft(const AudioBuffer& buffer, const StftConfig& config) {
  validate(config);
  validate(buffer);
  const int pad = config.frame_len / 2;
  const auto n = static_cast<long long>(buffer.samples.size());
  if (n < pad + 1) {
    throw InputError("signal too short for stft frame length " +
                     std::to_string(config.frame_len));
  }
  const long long padded_len = n + 2 * pad;
  const long long span = padded_len - config.frame_len;
  const int n_frames = static_cast<int>((span + config.hop - 1) / config.hop) + 1;

  Spectrogram spec;
  spec.config = config;
  spec.sample_rate = buffer.sample_rate;
  spec.n_samples = buffer.samples.size();
  spec.n_frames = n_frames;
  spec.n_bins = config.fft_len / 2 + 1;
  spec.bins.resize(static_cast<std::size_t>(n_frames) * spec.n_bins);

  const auto w = make_window(config.window, config.frame_len);
  std::vector<double> frame(static_cast<std::size_t>(config.frame_len));
  for (int m = 0; m < n_frames; ++m) {
    const long long start = static_cast<long long>(m) * config.hop;
    for (int q = 0; q < config.frame_len; ++q) {
      frame[q] = w[q] * padded_sample(buffer, start + q, pad);
    }
    auto bins = rfft(frame, config.fft_len);
    std::copy(bins.begin(), bins.end(), spec.bins.begin() + static_cast<std::size_t>(m) * spec.n_bins);
  }
  return spec;
}

AudioBuffer istft(const Spectrogram& spec) {
  validate(spec.config);
  const int pad = spec.config.frame_len / 2;
  const int frame_len = spec.config.frame_len;
  const long long total =
      static_cast<long long>(spec.n_frames - 1) * spec.config.hop + frame_len;

  const auto w = make_window(spec.config.window, frame_len);
  std::vector<double> acc(static_cast<std::size_t>(total), 0.0);
  std::vector<double> den(static_cast<std::size_t>(total), 0.0);

  std::vector<std::complex<double>> bins(static_cast<std::size_t>(spec.n_bins));
  for (int m = 0; m < spec.n_frames; ++m) {
    std::copy(spec.bins.begin() + static_cast<std::size_t>(m) * spec.n_bins,
              spec.bins.begin() + static_cast<std::size_t>(m + 1) * spec.n_bins, bins.begin());
    auto frame = irfft(bins, spec.config.fft_len);
    const long long start = static_cast<long long>(m) * spec.config.hop;
    for (int q = 0; q < frame_len; ++q) {
      acc[start + q] += w[q] * frame[q];
      den[start + q] += w[q] * w[q];
    }
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(spec.n_samples);
  for (std::size_t i = 0; i < spec.n_samples; ++i) {
    const std::size_t p = i + pad;
    out.samples[i] =
        den[p] > 0.0 ? static_cast<float>(acc[p] / den[p]) : 0.0f;
  }
  return out;
}

}  // namespace maskbench
