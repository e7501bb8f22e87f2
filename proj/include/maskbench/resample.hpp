#pragma once

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

/// Sample-rate conversion with a 64-tap Hann-windowed sinc kernel, evaluated
/// directly per output sample (kernel stretched when downsampling so the
/// cutoff stays below min(rates)/2, with a 0.95 rolloff margin).
/// target_rate == source rate returns an identical copy.
AudioBuffer resample(const AudioBuffer& buffer, int target_rate);

}  // namespace maskbench
