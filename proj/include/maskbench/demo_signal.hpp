#pragma once

#include <cstdint>

#include "maskbench/alignment.hpp"
#include "maskbench/audio_buffer.hpp"

namespace maskbench {

/// Synthetic speech-like utterance plus a matching word alignment, used by
/// the demo subcommand and the test suites. Voiced syllables (glottal
/// harmonics through time-varying formant resonators) with consonant-like
/// noise bursts, syllabic amplitude modulation and a touch of breath noise.
/// Fully determined by the seed.
struct DemoUtterance {
  AudioBuffer audio;
  Transcript words;
};

DemoUtterance synth_utterance(std::uint64_t seed, double duration_s = 3.0,
                              int sample_rate = 16000);

}  // namespace maskbench
