#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maskbench/alignment.hpp"
#include "maskbench/audio_buffer.hpp"
#include "maskbench/noise.hpp"
#include "maskbench/stft.hpp"

namespace maskbench {

/// Ideal-binary-mask parameters: keep a time-frequency cell when the local
/// SNR exceeds lc_db.
struct IbmConfig {
  double lc_db = 0.0;  // local criterion; 0 dB = speech dominates noise
  StftConfig stft;     // zero frame_len means "use the default preset"
};

struct BinaryTFMask {
  std::vector<std::uint8_t> cells;  // row-major, frames x n_bins; 1 = keep
  int n_frames = 0;
  int n_bins = 0;
  StftConfig config;
  int sample_rate = 0;
  std::size_t n_samples = 0;

  bool at(int frame, int bin) const {
    return cells[static_cast<std::size_t>(frame) * n_bins + bin] != 0;
  }
  void set(int frame, int bin, bool keep) {
    cells[static_cast<std::size_t>(frame) * n_bins + bin] = keep ? 1 : 0;
  }
};

/// Oracle mask from the clean signal and a degraded version of it. The noise
/// estimate is degraded - clean per sample, so the same computation covers
/// both additive and replacement masking (for replacement the "noise"
/// contains the negative of the removed speech, which is exactly why
/// recovery fails there). Cell conventions: zero interference keeps the cell
/// (zero noise means nothing to remove); zero speech against any actual
/// interference drops it.
BinaryTFMask compute_ibm(const AudioBuffer& clean, const AudioBuffer& degraded,
                         const IbmConfig& config);

/// Zero the dropped cells of the degraded signal's spectrogram and
/// resynthesize. Output length equals the input length.
AudioBuffer apply_tf_mask(const AudioBuffer& degraded, const BinaryTFMask& mask);

struct RecoverabilityReport {
  double stoi_additive = 0.0;
  double stoi_replacement = 0.0;
  // Span-cropped variants, only when requested.
  std::optional<double> stoi_additive_span;
  std::optional<double> stoi_replacement_span;
};

struct RecoverabilityOptions {
  double snr_db = -5.0;
  IbmConfig ibm;
  double ramp_ms = 5.0;
  bool span_stoi = false;  // also compute STOI over the spans alone
};

/// The additive-vs-replacement recoverability comparison: mask the target
/// spans both ways with the identical masker waveform (same seed, same SNR
/// scaling), compute the ideal binary mask for each degraded signal against
/// the clean one, apply it, and score STOI(clean, recovered) for both
/// conditions.
RecoverabilityReport recoverability_experiment(const AudioBuffer& clean,
                                               const SpanSet& target_spans,
                                               const NoiseSpec& masker,
                                               const RecoverabilityOptions& options);

}  // namespace maskbench
