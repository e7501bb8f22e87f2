#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maskbench/demo_signal.hpp"
#include "maskbench/errors.hpp"
#include "maskbench/noise.hpp"
#include "support/test_util.hpp"

using namespace maskbench;

namespace {

double rms(const AudioBuffer& b) {
  double acc = 0.0;
  for (float v : b.samples) acc += static_cast<double>(v) * v;
  return std::sqrt(acc / static_cast<double>(b.samples.size()));
}

// Mean per-bin power spectrum over non-overlapping slices, via the naive
// DFT oracle (no shared code with the library's FFT).
std::vector<double> sliced_power_spectrum(const AudioBuffer& b, std::size_t slice_len,
                                          std::size_t max_slices) {
  std::vector<double> power(slice_len / 2 + 1, 0.0);
  std::size_t used = 0;
  for (std::size_t s = 0; (s + 1) * slice_len <= b.samples.size() && used < max_slices; ++s) {
    std::vector<double> slice(slice_len);
    for (std::size_t i = 0; i < slice_len; ++i) {
      slice[i] = b.samples[s * slice_len + i];
    }
    const auto spec = testutil::naive_dft(slice);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] += std::norm(spec[k]);
    ++used;
  }
  for (auto& p : power) p /= static_cast<double>(used);
  return power;
}

// 1/3-octave band powers from a per-bin spectrum.
std::vector<double> third_octave_powers(const std::vector<double>& spectrum, int rate,
                                        std::size_t slice_len,
                                        const std::vector<double>& centers) {
  std::vector<double> bands;
  for (double c : centers) {
    const double lo = c / std::pow(2.0, 1.0 / 6.0);
    const double hi = c * std::pow(2.0, 1.0 / 6.0);
    double acc = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const double f = static_cast<double>(k) * rate / static_cast<double>(slice_len);
      if (f >= lo && f < hi) {
        acc += spectrum[k];
        ++count;
      }
    }
    REQUIRE(count > 0);
    bands.push_back(acc);
  }
  return bands;
}

}  // namespace

TEST_CASE("silence is exactly zero and exactly sized") {
  NoiseSpec spec;
  spec.kind = NoiseKind::silence;
  const AudioBuffer out = generate(spec, 0.5, 16000);
  REQUIRE(out.samples.size() == 8000);
  for (float v : out.samples) REQUIRE(v == 0.0f);
}

TEST_CASE("generate length is exact across awkward duration/rate pairs") {
  NoiseSpec spec;
  spec.kind = NoiseKind::white;
  spec.seed = 1;
  CHECK(generate(spec, 0.1, 44100).samples.size() == 4410);
  CHECK(generate(spec, 1.0 / 3.0, 16000).samples.size() == 5333);
  CHECK(generate(spec, 0.0101, 8000).samples.size() == 81);
  CHECK(generate_samples(spec, 12345, 16000).samples.size() == 12345);
}

TEST_CASE("seeded generation is bit-reproducible and seed-sensitive") {
  const DemoUtterance ref = synth_utterance(3, 2.0, 16000);
  for (NoiseKind kind : {NoiseKind::white, NoiseKind::tone, NoiseKind::speech_shaped}) {
    NoiseSpec spec;
    spec.kind = kind;
    spec.seed = 99;
    spec.modulated = true;
    const AudioBuffer a = generate_samples(spec, 9000, 16000, &ref.audio);
    const AudioBuffer b = generate_samples(spec, 9000, 16000, &ref.audio);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) REQUIRE(a.samples[i] == b.samples[i]);

    if (kind != NoiseKind::tone) {  // tone is seed-independent by design
      spec.seed = 100;
      const AudioBuffer c = generate_samples(spec, 9000, 16000, &ref.audio);
      bool any_diff = false;
      for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (a.samples[i] != c.samples[i]) any_diff = true;
      }
      CHECK(any_diff);
    }
  }
}

TEST_CASE("white noise has unit RMS and a flat spectrum") {
  NoiseSpec spec;
  spec.kind = NoiseKind::white;
  spec.seed = 4;
  const AudioBuffer out = generate(spec, 10.0, 16000);
  CHECK(rms(out) == doctest::Approx(1.0).epsilon(0.02));

  const auto spectrum = sliced_power_spectrum(out, 2048, 24);
  std::vector<double> centers;
  for (int k = 0; k <= 14; ++k) centers.push_back(200.0 * std::pow(2.0, k / 3.0));  // -> 5 kHz
  const auto bands = third_octave_powers(spectrum, 16000, 2048, centers);
  // Flat means equal power per Hz: normalize by bandwidth, then compare in dB.
  std::vector<double> db;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double width = centers[i] * (std::pow(2.0, 1.0 / 6.0) - std::pow(2.0, -1.0 / 6.0));
    db.push_back(10.0 * std::log10(bands[i] / width));
  }
  const double mean = [&] {
    double m = 0.0;
    for (double v : db) m += v;
    return m / static_cast<double>(db.size());
  }();
  for (double v : db) CHECK(std::abs(v - mean) < 2.0);
}

TEST_CASE("tone is a ramped half-scale sinusoid at the requested frequency") {
  NoiseSpec spec;
  spec.kind = NoiseKind::tone;
  spec.tone_freq = 1000.0;
  const int rate = 16000;
  const AudioBuffer out = generate(spec, 1.0, rate);
  REQUIRE(out.samples.size() == 16000);

  // Ramps: edges quiet, interior at half scale.
  CHECK(std::abs(out.samples.front()) < 0.02);
  CHECK(std::abs(out.samples.back()) < 0.02);
  double peak = 0.0;
  for (std::size_t i = 2000; i < 14000; ++i) {
    peak = std::max(peak, std::abs(static_cast<double>(out.samples[i])));
  }
  CHECK(peak == doctest::Approx(0.5).epsilon(0.01));

  // Frequency via the DFT oracle on an interior slice.
  std::vector<double> slice(2048);
  for (std::size_t i = 0; i < slice.size(); ++i) slice[i] = out.samples[4000 + i];
  const std::size_t bin = testutil::dominant_bin(slice);
  const double hz = static_cast<double>(bin) * rate / static_cast<double>(slice.size());
  CHECK(std::abs(hz - 1000.0) <= rate / static_cast<double>(slice.size()) + 1e-9);

  // Above Nyquist is an error.
  spec.tone_freq = 9000.0;
  CHECK_THROWS_AS(generate(spec, 0.5, rate), InputError);
}

TEST_CASE("speech-shaped noise requires a reference") {
  NoiseSpec spec;
  spec.kind = NoiseKind::speech_shaped;
  spec.seed = 5;
  CHECK_THROWS_AS(generate(spec, 1.0, 16000), InputError);
}

TEST_CASE("speech-shaped noise matches the reference LTAS within 3 dB per band") {
  const DemoUtterance ref = synth_utterance(11, 4.0, 16000);
  NoiseSpec spec;
  spec.kind = NoiseKind::speech_shaped;
  spec.seed = 6;
  const AudioBuffer noise = generate(spec, 10.0, 16000, &ref.audio);
  CHECK(rms(noise) == doctest::Approx(1.0).epsilon(0.02));

  std::vector<double> centers;
  for (int k = 0; k <= 15; ++k) centers.push_back(125.0 * std::pow(2.0, k / 3.0));  // 125..4k Hz

  const auto noise_bands =
      third_octave_powers(sliced_power_spectrum(noise, 4096, 24), 16000, 4096, centers);
  const auto ref_bands =
      third_octave_powers(sliced_power_spectrum(ref.audio, 4096, 24), 16000, 4096, centers);

  // Compare shapes: difference per band after removing the overall level
  // offset must stay within +-3 dB.
  std::vector<double> diff;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    diff.push_back(10.0 * std::log10(noise_bands[i] / ref_bands[i]));
  }
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= static_cast<double>(diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    INFO("band center ", centers[i], " Hz, deviation ", diff[i] - mean, " dB");
    CHECK(std::abs(diff[i] - mean) <= 3.0);
  }
}

TEST_CASE("modulation envelope is slow, positive, and near unit mean") {
  const auto env = modulation_envelope(17, 160000, 16000);
  REQUIRE(env.size() == 160000);
  double mean = 0.0, max_step = 0.0;
  for (std::size_t i = 0; i < env.size(); ++i) {
    REQUIRE(env[i] > 0.0);
    mean += env[i];
    if (i > 0) max_step = std::max(max_step, std::abs(env[i] - env[i - 1]));
  }
  mean /= static_cast<double>(env.size());
  CHECK(mean == doctest::Approx(1.0).epsilon(0.1));
  // An 8 Hz band-limited envelope cannot jump sample to sample.
  CHECK(max_step < 0.005);

  // Modulated noise should have a visibly time-varying short-term level.
  const DemoUtterance ref = synth_utterance(2, 2.0, 16000);
  NoiseSpec spec;
  spec.kind = NoiseKind::speech_shaped;
  spec.modulated = true;
  spec.seed = 8;
  const AudioBuffer mod = generate(spec, 5.0, 16000, &ref.audio);
  std::vector<double> frame_rms;
  const std::size_t flen = 1600;  // 100 ms
  for (std::size_t s = 0; (s + 1) * flen <= mod.samples.size(); ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < flen; ++i) {
      acc += static_cast<double>(mod.samples[s * flen + i]) * mod.samples[s * flen + i];
    }
    frame_rms.push_back(std::sqrt(acc / flen));
  }
  const auto [lo, hi] = std::minmax_element(frame_rms.begin(), frame_rms.end());
  CHECK(*hi / *lo > 1.3);
}

TEST_CASE("scale_to_snr hits the requested level") {
  NoiseSpec wspec;
  wspec.kind = NoiseKind::white;
  wspec.seed = 21;
  const AudioBuffer masker = generate(wspec, 1.0, 16000);

  AudioBuffer segment;
  segment.sample_rate = 16000;
  segment.samples.assign(16000, 0.0f);
  for (std::size_t i = 0; i < segment.samples.size(); ++i) {
    segment.samples[i] = static_cast<float>(0.25 * std::sin(2.0 * M_PI * 300.0 * i / 16000.0));
  }

  for (double snr : {-10.0, -5.0, 0.0, 10.0, 25.0}) {
    const AudioBuffer scaled = scale_to_snr(masker, segment, snr);
    CHECK(std::abs(measure_snr_db(segment, scaled) - snr) < 0.01);
  }

  // Equal-power inputs at 0 dB leave the masker untouched.
  const AudioBuffer same = scale_to_snr(segment, segment, 0.0);
  for (std::size_t i = 0; i < same.samples.size(); ++i) {
    CHECK(same.samples[i] == doctest::Approx(segment.samples[i]).epsilon(1e-6));
  }

  // Unit-power pair at +10 dB scales by 10^(-1/2).
  AudioBuffer ones;
  ones.sample_rate = 8000;
  ones.samples.assign(800, 1.0f);
  const AudioBuffer scaled = scale_to_snr(ones, ones, 10.0);
  // Stored as float, so only single precision survives.
  CHECK(scaled.samples[0] == doctest::Approx(0.31622776601).epsilon(1e-6));

  // Zero-power inputs are rejected.
  AudioBuffer silent;
  silent.sample_rate = 8000;
  silent.samples.assign(800, 0.0f);
  CHECK_THROWS_AS(scale_to_snr(silent, ones, 0.0), InputError);
  CHECK_THROWS_AS(scale_to_snr(ones, silent, 0.0), InputError);
  AudioBuffer other_rate = ones;
  other_rate.sample_rate = 16000;
  CHECK_THROWS_AS(scale_to_snr(ones, other_rate, 0.0), InputError);
}
