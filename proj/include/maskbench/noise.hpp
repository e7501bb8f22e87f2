#pragma once

#include <cstdint>
#include <vector>

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

enum class NoiseKind { silence, white, tone, speech_shaped };

/// Masker description. The seed fully determines stochastic output; two
/// calls with the same spec produce bit-identical signals.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::white;
  double tone_freq = 1000.0;  // tone only; broadcast-style censor tone default
  bool modulated = false;     // speech_shaped only: <= 8 Hz amplitude modulation
  std::uint64_t seed = 0;
};

/// Generate a masker of exactly n_samples at the given rate.
///   silence        all zeros
///   white          Gaussian, unit RMS in expectation
///   tone           0.5 amplitude sinusoid with 5 ms raised-cosine ramps
///   speech_shaped  white noise spectrally shaped to the reference's
///                  long-term average spectrum (1/3-octave smoothed),
///                  normalized to unit RMS; optional slow amplitude
///                  modulation when spec.modulated is set
/// reference is required for speech_shaped and is resampled internally if
/// its rate differs.
AudioBuffer generate_samples(const NoiseSpec& spec, std::size_t n_samples, int rate,
                             const AudioBuffer* reference = nullptr);

/// Same, with the length given as a duration: n = round(duration * rate).
AudioBuffer generate(const NoiseSpec& spec, double duration_s, int rate,
                     const AudioBuffer* reference = nullptr);

/// Scale a masker so that 10*log10(P_segment / P_masker_scaled) == snr_db,
/// with powers measured as mean square over the full length of each signal.
/// Throws InputError on rate mismatch or zero-power input.
AudioBuffer scale_to_snr(const AudioBuffer& masker, const AudioBuffer& target_segment,
                         double snr_db);

/// Measured SNR in dB of segment vs masker (mean-square powers).
double measure_snr_db(const AudioBuffer& segment, const AudioBuffer& masker);

/// The slow (<= 8 Hz) modulation envelope used for modulated speech-shaped
/// noise: mean ~1, strictly positive. Exposed for testing.
std::vector<double> modulation_envelope(std::uint64_t seed, std::size_t n_samples, int rate);

}  // namespace maskbench
