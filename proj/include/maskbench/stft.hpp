#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

enum class Window { hann, hamming, rect };

/// Short-time analysis parameters. The window/hop pair must give every
/// sample a positive squared-window overlap sum, which is what makes the
/// normalized overlap-add synthesis in istft() an exact inverse.
struct StftConfig {
  int frame_len = 0;
  int hop = 0;
  int fft_len = 0;
  Window window = Window::hann;
};

/// Conventional speech-analysis preset: 25 ms frame, 10 ms hop, periodic
/// Hann, fft_len = next power of two >= frame.
StftConfig default_stft_config(int sample_rate);

/// Throws InputError if the config violates 0 < hop <= frame_len <= fft_len
/// or the squared-window overlap sum has (near-)zeros in steady state.
void validate(const StftConfig& config);

struct Spectrogram {
  std::vector<std::complex<double>> bins;  // row-major, frames x n_bins
  int n_frames = 0;
  int n_bins = 0;  // fft_len / 2 + 1
  StftConfig config;
  int sample_rate = 0;
  std::size_t n_samples = 0;  // source length, so istft can crop exactly

  std::complex<double>& at(int frame, int bin) {
    return bins[static_cast<std::size_t>(frame) * n_bins + bin];
  }
  const std::complex<double>& at(int frame, int bin) const {
    return bins[static_cast<std::size_t>(frame) * n_bins + bin];
  }
};

/// Windowed DFT per frame. The signal is reflect-padded by frame_len/2 at
/// each end so every sample sits under full window overlap.
Spectrogram stft(const AudioBuffer& buffer, const StftConfig& config);

/// Weighted overlap-add synthesis: sum of window-weighted inverse DFTs
/// divided by the summed squared window. Exact inverse of stft() for
/// unmodified spectra; well-behaved for modified ones.
AudioBuffer istft(const Spectrogram& spec);

/// The analysis window as used by stft (periodic variants).
std::vector<double> make_window(Window window, int length);

}  // namespace maskbench
