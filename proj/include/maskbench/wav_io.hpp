#pragma once

#include <cstddef>
#include <string>

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

enum class WavEncoding { pcm16, float32 };

struct WavFile {
  AudioBuffer audio;
  WavEncoding encoding = WavEncoding::pcm16;
};

/// Read a RIFF/WAVE file. Accepts mono PCM16 little-endian and IEEE float32.
/// Integer samples are normalized by 1/32768; float samples pass through.
/// Multichannel input is an error unless downmix is set, in which case
/// channels are averaged. Throws InputError on anything malformed.
WavFile read_wav(const std::string& path, bool downmix = false);

/// Write a RIFF/WAVE file. Samples outside [-1, 1] are clipped; the return
/// value is the number of clipped samples (callers should warn when > 0).
/// float32 writes are bit-exact for in-range samples; pcm16 rounds to the
/// nearest step of 1/32768.
std::size_t write_wav(const AudioBuffer& buffer, const std::string& path,
                      WavEncoding encoding);

}  // namespace maskbench
