#pragma once

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

/// Constants of the classic short-time objective intelligibility measure.
/// These are the published canonical values; they are kept in a struct for
/// research use but results are only comparable at the defaults.
struct StoiConfig {
  int fs = 10000;              // internal rate, Hz
  int frame_len = 256;
  int fft_len = 512;
  int hop = 128;
  int n_bands = 15;            // one-third-octave bands
  double min_center_freq = 150.0;
  int segment_len = 30;        // frames per short-time segment
  double beta_db = -15.0;      // lower signal-to-distortion bound (clipping)
  double dyn_range_db = 40.0;  // silent-frame removal threshold below peak
};

/// STOI between a clean reference and a processed signal. Both are resampled
/// to 10 kHz internally; silent frames are removed using the clean signal's
/// energy; one-third-octave band envelopes are compared over 30-frame
/// segments after normalization and clipping. Typically in [0, 1], higher
/// means more intelligible. Invariant to a global gain on the processed
/// signal.
///
/// Throws InputError on rate mismatch, length mismatch beyond one sample at
/// the internal rate, or when every frame is silent.
double stoi(const AudioBuffer& clean, const AudioBuffer& processed,
            const StoiConfig& config = {});

}  // namespace maskbench
