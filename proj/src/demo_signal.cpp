#include "maskbench/demo_signal.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "maskbench/rng.hpp"

namespace maskbench {

namespace {

struct Vowel {
  const char* name;
  double f1, f2, f3;
};

// Rough adult-male formant targets; bandwidths fixed below.
constexpr Vowel kVowels[] = {
    {"a", 730.0, 1090.0, 2440.0}, {"e", 530.0, 1840.0, 2480.0}, {"i", 270.0, 2290.0, 3010.0},
    {"o", 570.0, 840.0, 2410.0},  {"u", 300.0, 870.0, 2240.0},
};
constexpr const char* kOnsets[] = {"b", "d", "g", "k", "m", "n", "p", "s", "t"};
constexpr double kBandwidths[3] = {90.0, 110.0, 170.0};

double resonance_gain(double f, double center, double bw) {
  const double num = f * bw;
  const double den = f * f - center * center;
  return num / std::sqrt(den * den + num * num);
}

// Spectral envelope at frequency f: three formant resonators on a source
// with gentle high-frequency rolloff.
double harmonic_amp(double f, const Vowel& v) {
  double amp = 1.0 / (1.0 + (f / 600.0) * (f / 600.0) * 0.5);
  amp *= 0.2 + resonance_gain(f, v.f1, kBandwidths[0]);
  amp *= 0.2 + resonance_gain(f, v.f2, kBandwidths[1]);
  amp *= 0.2 + resonance_gain(f, v.f3, kBandwidths[2]);
  return amp;
}

double edge_envelope(std::size_t i, std::size_t len, std::size_t attack, std::size_t release) {
  double env = 1.0;
  if (i < attack) env *= 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(i + 1) / (attack + 1)));
  const std::size_t from_end = len - 1 - i;
  if (from_end < release) {
    env *= 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(from_end + 1) / (release + 1)));
  }
  return env;
}

}  // namespace

DemoUtterance synth_utterance(std::uint64_t seed, double duration_s, int sample_rate) {
  DemoUtterance utt;
  utt.audio.sample_rate = sample_rate;
  const auto total = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  utt.audio.samples.assign(total, 0.0f);
  Rng rng(Rng::derive(seed, 0x9d5f));

  const double f0_base = 105.0 + 30.0 * rng.uniform();
  std::size_t cursor = static_cast<std::size_t>(std::llround(0.12 * sample_rate));
  const std::size_t tail_margin = static_cast<std::size_t>(std::llround(0.12 * sample_rate));

  std::vector<double> wave(total, 0.0);
  double phase[24] = {0.0};

  while (true) {
    // Assemble the next word: 2-3 consonant-vowel syllables.
    const int n_syll = rng.uniform() < 0.55 ? 2 : 3;
    std::string word;
    std::vector<std::pair<int, int>> sylls;  // (onset index, vowel index)
    std::size_t word_len = 0;
    std::vector<std::size_t> syll_lens, burst_lens;
    for (int s = 0; s < n_syll; ++s) {
      const int onset = static_cast<int>(rng.uniform() * std::size(kOnsets)) %
                        static_cast<int>(std::size(kOnsets));
      const int vowel = static_cast<int>(rng.uniform() * std::size(kVowels)) %
                        static_cast<int>(std::size(kVowels));
      sylls.push_back({onset, vowel});
      word += kOnsets[onset];
      word += kVowels[vowel].name;
      const auto vlen = static_cast<std::size_t>(
          std::llround((0.11 + 0.07 * rng.uniform()) * sample_rate));
      const auto blen = static_cast<std::size_t>(
          std::llround((0.022 + 0.012 * rng.uniform()) * sample_rate));
      syll_lens.push_back(vlen);
      burst_lens.push_back(blen);
      word_len += blen + vlen;
    }
    const auto gap = static_cast<std::size_t>(
        std::llround((0.06 + 0.06 * rng.uniform()) * sample_rate));
    if (cursor + word_len + tail_margin > total) break;

    const std::size_t word_start = cursor;
    for (int s = 0; s < n_syll; ++s) {
      const auto [onset, vowel_idx] = sylls[static_cast<std::size_t>(s)];
      const Vowel& vowel = kVowels[vowel_idx];

      // Consonant-like burst: white noise, high-passed by first differencing
      // for the "sharp" onsets, left broadband otherwise.
      const std::size_t blen = burst_lens[static_cast<std::size_t>(s)];
      const bool sharp = onset >= 5;
      double prev = rng.gaussian();
      for (std::size_t i = 0; i < blen; ++i) {
        double n = rng.gaussian();
        const double v = sharp ? 0.5 * (n - prev) : 0.45 * n;
        prev = n;
        wave[cursor + i] += 0.22 * v * edge_envelope(i, blen, blen / 4 + 1, blen / 3 + 1);
      }
      cursor += blen;

      // Voiced nucleus: harmonics of a slowly declining f0, amplitudes from
      // the vowel's formant envelope, phase-continuous across syllables.
      // Per-syllable pitch accents spread the low harmonics across the whole
      // 80-175 Hz region, as natural prosody does; without them the long-term
      // spectrum has deep inter-harmonic valleys no real voice shows.
      const std::size_t vlen = syll_lens[static_cast<std::size_t>(s)];
      const double f0_here = f0_base * (1.0 - 0.10 * static_cast<double>(cursor) / total) *
                             (0.85 + 0.45 * rng.uniform());
      const int n_harm = std::min(24, static_cast<int>(0.45 * sample_rate / f0_here));
      double amps[24];
      double amp_norm = 0.0;
      for (int h = 0; h < n_harm; ++h) {
        amps[h] = harmonic_amp(f0_here * (h + 1), vowel);
        amp_norm += amps[h] * amps[h];
      }
      amp_norm = 1.0 / std::sqrt(std::max(amp_norm, 1e-12));
      const std::size_t attack = static_cast<std::size_t>(0.018 * sample_rate);
      const std::size_t release = static_cast<std::size_t>(0.030 * sample_rate);
      for (std::size_t i = 0; i < vlen; ++i) {
        // ~5 Hz syllabic flutter plus a slight intra-vowel f0 fall.
        const double f0_now =
            f0_here * (1.0 - 0.03 * static_cast<double>(i) / vlen) *
            (1.0 + 0.005 * std::sin(2.0 * M_PI * 5.0 * static_cast<double>(cursor + i) /
                                    sample_rate));
        double v = 0.0;
        for (int h = 0; h < n_harm; ++h) {
          phase[h] += 2.0 * M_PI * f0_now * (h + 1) / sample_rate;
          if (phase[h] > 2.0 * M_PI) phase[h] -= 2.0 * M_PI * std::floor(phase[h] / (2.0 * M_PI));
          v += amps[h] * std::sin(phase[h]);
        }
        v *= amp_norm * edge_envelope(i, vlen, attack, release);
        v += 0.004 * rng.gaussian();  // breath
        wave[cursor + i] += 0.46 * v;
      }
      cursor += vlen;
    }

    WordAlignment aligned;
    aligned.word = word;
    aligned.start = static_cast<double>(word_start) / sample_rate;
    aligned.end = static_cast<double>(cursor) / sample_rate;
    utt.words.words.push_back(aligned);
    cursor += gap;
  }

  double peak = 1e-9;
  for (double v : wave) peak = std::max(peak, std::abs(v));
  const double norm = 0.45 / peak;
  for (std::size_t i = 0; i < total; ++i) {
    utt.audio.samples[i] = static_cast<float>(wave[i] * norm);
  }
  return utt;
}

}  // namespace maskbench
