#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maskbench/alignment.hpp"
#include "maskbench/audio_buffer.hpp"
#include "maskbench/noise.hpp"

namespace maskbench {

enum class MaskMode { replace, additive };

/// How to mask the target spans.
///
/// snr_db is required in additive mode (the masker is scaled against each
/// span's own speech power). In replace mode it is optional: when set, the
/// replacement masker is scaled the same way, which is what lets an
/// additive/replacement comparison use the identical masker waveform.
struct MaskSpec {
  MaskMode mode = MaskMode::replace;
  NoiseSpec noise;
  std::optional<double> snr_db;
  bool reversible = false;
  double ramp_ms = 5.0;
};

struct SampleRegion {
  std::int64_t start = 0;  // inclusive
  std::int64_t end = 0;    // exclusive
};

/// Span times rounded to sample indices against the buffer's rate. Empty
/// regions are dropped; spans outside the buffer raise InputError.
std::vector<SampleRegion> sample_regions(const SpanSet& spans, const AudioBuffer& buffer);

/// Everything needed to reverse a mask: the original samples of every
/// altered region, bound to the masked audio by a content digest so reversal
/// cannot be applied to the wrong file.
struct MaskSidecar {
  std::uint64_t source_hash = 0;  // digest of the *masked* output buffer
  int sample_rate = 0;
  std::vector<SampleRegion> regions;  // disjoint, sorted
  std::vector<float> original;        // concatenated samples, region order
};

/// Apply the mask to every span. Samples outside the spans are bit-identical
/// to the input. Edge ramps (raised-cosine over ramp_ms, inside the span)
/// crossfade original and masker in replace mode, and fade the masker
/// in/out in additive mode. With reversible set, the returned sidecar holds
/// the original value of every altered sample.
std::pair<AudioBuffer, std::optional<MaskSidecar>> apply_mask(const AudioBuffer& buffer,
                                                              const SpanSet& spans,
                                                              const MaskSpec& spec);

/// Restore the pre-mask buffer, bit-exactly. Throws IntegrityError when the
/// sidecar hash does not match the masked buffer, InputError on
/// out-of-range regions.
AudioBuffer unmask(const AudioBuffer& masked, const MaskSidecar& sidecar);

/// Sidecar container file: one line of JSON
///   {"version":1,"hash_algo":"fnv1a64","source_hash":"...","sample_rate":N,
///    "regions":[{"start_sample":a,"end_sample":b},...]}
/// followed by the original samples as little-endian float32 in region
/// order. Round trip is bit-exact.
void write_sidecar(const MaskSidecar& sidecar, const std::string& path);
MaskSidecar read_sidecar(const std::string& path);

}  // namespace maskbench
