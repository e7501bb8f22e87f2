#include "maskbench/ibm.hpp"

#include <cmath>

#include "maskbench/errors.hpp"
#include "maskbench/masking.hpp"
#include "maskbench/stoi.hpp"

namespace maskbench {

namespace {

StftConfig resolve_stft(const IbmConfig& config, int sample_rate) {
  StftConfig stft = config.stft;
  if (stft.frame_len == 0) stft = default_stft_config(sample_rate);
  validate(stft);
  return stft;
}

AudioBuffer crop_to_regions(const AudioBuffer& buffer, const std::vector<SampleRegion>& regions) {
  AudioBuffer out;
  out.sample_rate = buffer.sample_rate;
  for (const auto& r : regions) {
    out.samples.insert(out.samples.end(), buffer.samples.begin() + r.start,
                       buffer.samples.begin() + r.end);
  }
  return out;
}

}  // namespace

BinaryTFMask compute_ibm(const AudioBuffer& clean, const AudioBuffer& degraded,
                         const IbmConfig& config) {
  validate(clean);
  validate(degraded);
  if (clean.sample_rate != degraded.sample_rate) {
    throw InputError("clean and degraded audio must share a sample rate");
  }
  if (clean.samples.size() != degraded.samples.size()) {
    throw InputError("clean and degraded audio must have the same length (" +
                     std::to_string(clean.samples.size()) + " vs " +
                     std::to_string(degraded.samples.size()) + " samples)");
  }
  const StftConfig stft_config = resolve_stft(config, clean.sample_rate);

  // Whatever was done to the signal, the per-sample residual is the
  // interference; for replacement masking it includes the removed speech
  // (negated), which is precisely why those cells fail the criterion.
  AudioBuffer noise;
  noise.sample_rate = clean.sample_rate;
  noise.samples.resize(clean.samples.size());
  for (std::size_t i = 0; i < clean.samples.size(); ++i) {
    noise.samples[i] = static_cast<float>(static_cast<double>(degraded.samples[i]) -
                                          static_cast<double>(clean.samples[i]));
  }

  const Spectrogram speech = stft(clean, stft_config);
  const Spectrogram interference = stft(noise, stft_config);

  BinaryTFMask mask;
  mask.n_frames = speech.n_frames;
  mask.n_bins = speech.n_bins;
  mask.config = stft_config;
  mask.sample_rate = clean.sample_rate;
  mask.n_samples = clean.samples.size();
  mask.cells.assign(static_cast<std::size_t>(speech.n_frames) *
                        static_cast<std::size_t>(speech.n_bins),
                    0);

  const double ratio_floor = std::pow(10.0, config.lc_db / 10.0);
  for (int t = 0; t < speech.n_frames; ++t) {
    for (int f = 0; f < speech.n_bins; ++f) {
      const double ps = std::norm(speech.at(t, f));
      const double pn = std::norm(interference.at(t, f));
      // No interference -> keep (zero noise means nothing to remove, so the
      // 0/0 cell stays); otherwise keep only where speech dominates. A
      // zero-speech cell can never beat a positive threshold, so it drops.
      const bool keep = pn == 0.0 ? true : ps > ratio_floor * pn;
      mask.set(t, f, keep);
    }
  }
  return mask;
}

AudioBuffer apply_tf_mask(const AudioBuffer& degraded, const BinaryTFMask& mask) {
  validate(degraded);
  if (degraded.sample_rate != mask.sample_rate) {
    throw InputError("time-frequency mask was built at a different sample rate");
  }
  if (degraded.samples.size() != mask.n_samples) {
    throw InputError("time-frequency mask was built for a different length signal");
  }
  Spectrogram spec = stft(degraded, mask.config);
  if (spec.n_frames != mask.n_frames || spec.n_bins != mask.n_bins) {
    throw InputError("time-frequency mask dimensions do not match this signal");
  }
  for (int t = 0; t < spec.n_frames; ++t) {
    for (int f = 0; f < spec.n_bins; ++f) {
      if (!mask.at(t, f)) spec.at(t, f) = 0.0;
    }
  }
  return istft(spec);
}

RecoverabilityReport recoverability_experiment(const AudioBuffer& clean,
                                               const SpanSet& target_spans,
                                               const NoiseSpec& masker,
                                               const RecoverabilityOptions& options) {
  validate(clean);
  if (target_spans.spans().empty()) {
    throw InputError("the recoverability experiment needs at least one target span");
  }
  if (masker.kind == NoiseKind::silence) {
    throw InputError("the recoverability comparison needs an actual masker, not silence");
  }

  // Identical masker waveform in both conditions: same spec, same seed, and
  // snr_db set in both, so per-span generation and scaling agree sample for
  // sample.
  MaskSpec additive;
  additive.mode = MaskMode::additive;
  additive.noise = masker;
  additive.snr_db = options.snr_db;
  additive.ramp_ms = options.ramp_ms;

  MaskSpec replacement = additive;
  replacement.mode = MaskMode::replace;

  const AudioBuffer degraded_add = apply_mask(clean, target_spans, additive).first;
  const AudioBuffer degraded_rep = apply_mask(clean, target_spans, replacement).first;

  const BinaryTFMask ibm_add = compute_ibm(clean, degraded_add, options.ibm);
  const BinaryTFMask ibm_rep = compute_ibm(clean, degraded_rep, options.ibm);

  const AudioBuffer recovered_add = apply_tf_mask(degraded_add, ibm_add);
  const AudioBuffer recovered_rep = apply_tf_mask(degraded_rep, ibm_rep);

  RecoverabilityReport report;
  report.stoi_additive = stoi(clean, recovered_add);
  report.stoi_replacement = stoi(clean, recovered_rep);

  if (options.span_stoi) {
    const auto regions = sample_regions(target_spans, clean);
    const AudioBuffer clean_spans = crop_to_regions(clean, regions);
    report.stoi_additive_span = stoi(clean_spans, crop_to_regions(recovered_add, regions));
    report.stoi_replacement_span = stoi(clean_spans, crop_to_regions(recovered_rep, regions));
  }
  return report;
}

}  // namespace maskbench
