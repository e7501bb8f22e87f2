#include "maskbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "maskbench/errors.hpp"
#include "maskbench/resample.hpp"
#include "maskbench/rng.hpp"
#include "maskbench/stft.hpp"

namespace maskbench {

namespace {

constexpr double kToneAmplitude = 0.5;
constexpr double kToneRampSec = 0.005;
constexpr double kModulationCutoffHz = 8.0;
constexpr double kModulationDepth = 0.5;
constexpr double kModulationFloor = 0.05;

std::vector<float> gaussian_samples(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<float> out(n);
  for (auto& v : out) v = static_cast<float>(rng.gaussian());
  return out;
}

AudioBuffer tone(double freq, std::size_t n, int rate) {
  if (freq <= 0.0 || freq >= rate / 2.0) {
    throw InputError("tone frequency must lie in (0, rate/2); got " + std::to_string(freq));
  }
  AudioBuffer out;
  out.sample_rate = rate;
  out.samples.resize(n);
  auto ramp = static_cast<std::size_t>(std::llround(kToneRampSec * rate));
  ramp = std::min(ramp, n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    double v = kToneAmplitude * std::sin(2.0 * M_PI * freq * static_cast<double>(i) / rate);
    double w = 1.0;
    if (ramp > 0 && i < ramp) {
      w = 0.5 - 0.5 * std::cos(M_PI * (static_cast<double>(i) + 0.5) / ramp);
    } else if (ramp > 0 && i >= n - ramp) {
      w = 0.5 - 0.5 * std::cos(M_PI * (static_cast<double>(n - 1 - i) + 0.5) / ramp);
    }
    out.samples[i] = static_cast<float>(v * w);
  }
  return out;
}

void normalize_rms(AudioBuffer& buffer) {
  double p = mean_power(buffer);
  if (p <= 0.0) return;
  const double g = 1.0 / std::sqrt(p);
  for (auto& s : buffer.samples) s = static_cast<float>(s * g);
}

/// Mean STFT power per bin (Welch estimate with the default preset).
std::vector<double> welch_ltas(const AudioBuffer& signal, const StftConfig& cfg) {
  Spectrogram spec = stft(signal, cfg);
  std::vector<double> ltas(static_cast<std::size_t>(spec.n_bins), 0.0);
  for (int m = 0; m < spec.n_frames; ++m) {
    for (int f = 0; f < spec.n_bins; ++f) {
      ltas[f] += std::norm(spec.at(m, f));
    }
  }
  for (auto& v : ltas) v /= std::max(1, spec.n_frames);
  return ltas;
}

/// Per-bin gains reproducing the reference's 1/3-octave band powers: every
/// bin inside a band gets the square root of that band's mean power, so the
/// shaped noise matches the reference band-for-band instead of chasing
/// individual harmonics. Interpolating across band centers looks smoother but
/// systematically overfills spectral valleys and drains their neighbors.
std::vector<double> band_smoothed_gain(const std::vector<double>& ltas, int fft_len, int rate) {
  const double nyquist = rate / 2.0;
  const double bin_hz = static_cast<double>(rate) / fft_len;
  const double third = std::pow(2.0, 1.0 / 3.0);
  const double half_band = std::pow(2.0, 1.0 / 6.0);

  struct Band {
    double lo, hi;
    double power;
  };
  std::vector<Band> bands;
  for (double center = 50.0; center / half_band < nyquist; center *= third) {
    const double lo = center / half_band;
    const double hi = center * half_band;
    double acc = 0.0;
    int count = 0;
    for (std::size_t f = 1; f < ltas.size(); ++f) {
      const double hz = static_cast<double>(f) * bin_hz;
      if (hz >= lo && hz < hi) {
        acc += ltas[f];
        ++count;
      }
    }
    if (count > 0) {
      bands.push_back({lo, hi, std::max(acc / count, 1e-300)});
    }
  }
  if (bands.size() < 2) {
    throw InputError("reference spectrum too sparse for speech-shaped noise");
  }

  std::vector<double> gain(ltas.size(), 0.0);
  for (std::size_t f = 1; f < gain.size(); ++f) {
    const double hz = static_cast<double>(f) * bin_hz;
    const Band* hit = &bands.back();
    if (hz < bands.front().lo) {
      hit = &bands.front();
    } else {
      for (const Band& b : bands) {
        if (hz >= b.lo && hz < b.hi) {
          hit = &b;
          break;
        }
      }
    }
    gain[f] = std::sqrt(hit->power);
  }
  gain[0] = gain[1];  // no special DC emphasis
  return gain;
}

AudioBuffer speech_shaped(const NoiseSpec& spec, std::size_t n, int rate,
                          const AudioBuffer* reference) {
  if (reference == nullptr || reference->samples.empty()) {
    throw InputError("speech-shaped noise requires a reference signal");
  }
  AudioBuffer ref = reference->sample_rate == rate ? *reference : resample(*reference, rate);
  // The 1/3-octave bands near 100 Hz are only ~25 Hz wide, so both the
  // spectrum estimate and the shaping need a main lobe much narrower than
  // that: aim for a ~quarter-second window, shrinking on short references.
  int frame = 256;
  const auto target_frame = static_cast<std::size_t>(std::llround(0.26 * rate));
  while (static_cast<std::size_t>(frame) * 2 <= std::min(ref.samples.size(), target_frame)) {
    frame *= 2;
  }
  if (ref.samples.size() < static_cast<std::size_t>(frame)) {
    throw InputError("reference too short for a long-term spectrum estimate");
  }
  StftConfig cfg;
  cfg.frame_len = frame;
  cfg.hop = frame / 2;
  cfg.fft_len = frame;
  cfg.window = Window::hann;

  const auto ltas = welch_ltas(ref, cfg);
  const auto gain = band_smoothed_gain(ltas, cfg.fft_len, rate);

  // Shape white noise in the STFT domain. Generate a comfortable minimum
  // length so very short spans still see a stationary estimate, then crop.
  const std::size_t gen_len = std::max<std::size_t>(n, static_cast<std::size_t>(4) * cfg.frame_len);
  AudioBuffer base;
  base.sample_rate = rate;
  base.samples = gaussian_samples(spec.seed, gen_len);

  Spectrogram noise_spec = stft(base, cfg);
  for (int m = 0; m < noise_spec.n_frames; ++m) {
    for (int f = 0; f < noise_spec.n_bins; ++f) {
      noise_spec.at(m, f) *= gain[static_cast<std::size_t>(f)];
    }
  }
  AudioBuffer shaped = istft(noise_spec);
  shaped.samples.resize(n);
  normalize_rms(shaped);

  if (spec.modulated) {
    const auto env = modulation_envelope(Rng::derive(spec.seed, 0x656e76), n, rate);
    for (std::size_t i = 0; i < n; ++i) {
      shaped.samples[i] = static_cast<float>(shaped.samples[i] * env[i]);
    }
    normalize_rms(shaped);
  }
  return shaped;
}

}  // namespace

std::vector<double> modulation_envelope(std::uint64_t seed, std::size_t n_samples, int rate) {
  std::vector<double> env(n_samples, 1.0);
  if (n_samples < 8) return env;

  Rng rng(seed);
  // Three cascaded one-pole low-passes at the modulation cutoff give a steep
  // enough rolloff that almost all fluctuation power sits below ~16 Hz.
  const double alpha = std::exp(-2.0 * M_PI * kModulationCutoffHz / rate);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  // Burn in so the start of the envelope is already in steady state.
  const std::size_t burn = static_cast<std::size_t>(rate / 4);
  std::vector<double> raw(n_samples);
  for (std::size_t i = 0; i < burn + n_samples; ++i) {
    const double x = rng.gaussian();
    s1 = alpha * s1 + (1.0 - alpha) * x;
    s2 = alpha * s2 + (1.0 - alpha) * s1;
    s3 = alpha * s3 + (1.0 - alpha) * s2;
    if (i >= burn) raw[i - burn] = s3;
  }

  double mean = 0.0;
  for (double v : raw) mean += v;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (double v : raw) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_samples);
  if (var <= 0.0) return env;
  const double inv_std = 1.0 / std::sqrt(var);
  for (std::size_t i = 0; i < n_samples; ++i) {
    env[i] = std::max(kModulationFloor, 1.0 + kModulationDepth * (raw[i] - mean) * inv_std);
  }
  return env;
}

AudioBuffer generate_samples(const NoiseSpec& spec, std::size_t n_samples, int rate,
                             const AudioBuffer* reference) {
  if (rate <= 0) throw InputError("noise generation requires a positive sample rate");
  if (n_samples == 0) throw InputError("noise duration must be positive");
  switch (spec.kind) {
    case NoiseKind::silence: {
      AudioBuffer out;
      out.sample_rate = rate;
      out.samples.assign(n_samples, 0.0f);
      return out;
    }
    case NoiseKind::white: {
      AudioBuffer out;
      out.sample_rate = rate;
      out.samples = gaussian_samples(spec.seed, n_samples);
      return out;
    }
    case NoiseKind::tone:
      return tone(spec.tone_freq, n_samples, rate);
    case NoiseKind::speech_shaped:
      return speech_shaped(spec, n_samples, rate, reference);
  }
  throw InputError("unknown noise kind");
}

AudioBuffer generate(const NoiseSpec& spec, double duration_s, int rate,
                     const AudioBuffer* reference) {
  if (duration_s <= 0.0) throw InputError("noise duration must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate));
  return generate_samples(spec, n, rate, reference);
}

double measure_snr_db(const AudioBuffer& segment, const AudioBuffer& masker) {
  const double ps = mean_power(segment);
  const double pm = mean_power(masker);
  if (ps <= 0.0 || pm <= 0.0) {
    throw InputError("SNR is undefined for zero-power signals");
  }
  return 10.0 * std::log10(ps / pm);
}

AudioBuffer scale_to_snr(const AudioBuffer& masker, const AudioBuffer& target_segment,
                         double snr_db) {
  if (masker.sample_rate != target_segment.sample_rate) {
    throw InputError("scale_to_snr: masker and segment sample rates differ");
  }
  const double p_seg = mean_power(target_segment);
  const double p_mask = mean_power(masker);
  if (p_seg <= 0.0) throw InputError("scale_to_snr: target segment has zero power");
  if (p_mask <= 0.0) throw InputError("scale_to_snr: masker has zero power");

  // 10*log10(p_seg / (g^2 * p_mask)) == snr_db
  const double g = std::sqrt(p_seg / (p_mask * std::pow(10.0, snr_db / 10.0)));
  AudioBuffer out = masker;
  for (auto& s : out.samples) s = static_cast<float>(s * g);
  return out;
}

}  // namespace maskbench
