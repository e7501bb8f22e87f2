#include "maskbench/stoi.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "maskbench/errors.hpp"
#include "maskbench/fft.hpp"
#include "maskbench/resample.hpp"

namespace maskbench {

namespace {

// Symmetric Hann with no zero endpoints, the analysis window of the classic
// measure (not the periodic variant used elsewhere in this codebase).
std::vector<double> hanning(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(2.0 * M_PI * (i + 1) / (n + 1)));
  }
  return w;
}

// Frame starts: 0, hop, 2*hop, ... while the frame fits with one sample to
// spare (mirrors the reference tooling's indexing).
std::vector<std::size_t> frame_starts(std::size_t len, int frame_len, int hop) {
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + static_cast<std::size_t>(frame_len) < len;
       s += static_cast<std::size_t>(hop)) {
    starts.push_back(s);
  }
  return starts;
}

// Drop frames whose clean-signal level is more than dyn_range_db below the
// loudest frame, then rebuild both signals by overlap-adding the kept
// windowed frames.
void remove_silent_frames(std::vector<double>& x, std::vector<double>& y,
                          const StoiConfig& cfg) {
  const auto starts = frame_starts(x.size(), cfg.frame_len, cfg.hop);
  if (starts.empty()) throw InputError("signal too short for an intelligibility estimate");
  const auto w = hanning(cfg.frame_len);

  std::vector<double> level(starts.size());
  double peak = -1e300;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    double e = 0.0;
    for (int i = 0; i < cfg.frame_len; ++i) {
      const double v = x[starts[j] + static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
      e += v * v;
    }
    level[j] = 10.0 * std::log10(e / cfg.frame_len + 1e-300);
    peak = std::max(peak, level[j]);
  }
  // An identically-zero reference leaves every frame "at the peak"; catch it
  // here rather than reporting a meaningless score of zero.
  if (peak <= -2990.0) {
    throw InputError("clean reference is silent; intelligibility is undefined");
  }

  std::vector<double> xs(x.size(), 0.0), ys(y.size(), 0.0);
  std::size_t kept = 0;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    if (level[j] - peak + cfg.dyn_range_db <= 0.0) continue;
    const std::size_t out0 = kept * static_cast<std::size_t>(cfg.hop);
    for (int i = 0; i < cfg.frame_len; ++i) {
      const double wi = w[static_cast<std::size_t>(i)];
      xs[out0 + static_cast<std::size_t>(i)] += x[starts[j] + static_cast<std::size_t>(i)] * wi;
      ys[out0 + static_cast<std::size_t>(i)] += y[starts[j] + static_cast<std::size_t>(i)] * wi;
    }
    ++kept;
  }
  if (kept == 0) throw InputError("clean reference contains no frames above the silence floor");
  const std::size_t out_len = (kept - 1) * static_cast<std::size_t>(cfg.hop) +
                              static_cast<std::size_t>(cfg.frame_len);
  xs.resize(out_len);
  ys.resize(out_len);
  x = std::move(xs);
  y = std::move(ys);
}

// Windowed power spectra, frames x (fft_len/2 + 1), row-major.
std::vector<double> power_spectra(const std::vector<double>& x, const StoiConfig& cfg,
                                  std::size_t* n_frames_out) {
  const auto starts = frame_starts(x.size(), cfg.frame_len, cfg.hop);
  const auto w = hanning(cfg.frame_len);
  const std::size_t n_bins = static_cast<std::size_t>(cfg.fft_len) / 2 + 1;
  std::vector<double> power(starts.size() * n_bins);
  std::vector<double> frame(static_cast<std::size_t>(cfg.frame_len));
  for (std::size_t t = 0; t < starts.size(); ++t) {
    for (int i = 0; i < cfg.frame_len; ++i) {
      frame[static_cast<std::size_t>(i)] =
          x[starts[t] + static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    }
    const auto spec = rfft(frame, cfg.fft_len);
    for (std::size_t k = 0; k < n_bins; ++k) power[t * n_bins + k] = std::norm(spec[k]);
  }
  *n_frames_out = starts.size();
  return power;
}

// One-third-octave band edges snapped to the nearest FFT bin; band k covers
// bins [lo, hi). Geometric spacing from min_center_freq upward.
struct Band {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

std::vector<Band> third_octave_bands(const StoiConfig& cfg) {
  const std::size_t n_bins = static_cast<std::size_t>(cfg.fft_len) / 2 + 1;
  auto nearest_bin = [&](double freq) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n_bins; ++i) {
      const double f = static_cast<double>(cfg.fs) * static_cast<double>(i) / cfg.fft_len;
      const double d = (f - freq) * (f - freq);
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    return arg;
  };
  std::vector<Band> bands(static_cast<std::size_t>(cfg.n_bands));
  for (int k = 0; k < cfg.n_bands; ++k) {
    const double lo_edge = cfg.min_center_freq * std::pow(2.0, (2.0 * k - 1.0) / 6.0);
    const double hi_edge = cfg.min_center_freq * std::pow(2.0, (2.0 * k + 1.0) / 6.0);
    bands[static_cast<std::size_t>(k)] = {nearest_bin(lo_edge), nearest_bin(hi_edge)};
  }
  return bands;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double num = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    num += da * db;
    na += da * da;
    nb += db * db;
  }
  // Degenerate (constant) segments carry no envelope information; score them
  // as uncorrelated rather than dividing by zero.
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return num / std::sqrt(na * nb);
}

}  // namespace

double stoi(const AudioBuffer& clean, const AudioBuffer& processed, const StoiConfig& cfg) {
  validate(clean);
  validate(processed);
  if (clean.sample_rate != processed.sample_rate) {
    throw InputError("intelligibility inputs must share a sample rate (" +
                     std::to_string(clean.sample_rate) + " vs " +
                     std::to_string(processed.sample_rate) + " Hz)");
  }
  if (cfg.frame_len <= 0 || cfg.hop <= 0 || cfg.fft_len < cfg.frame_len || cfg.n_bands <= 0 ||
      cfg.segment_len <= 1 || cfg.fs <= 0) {
    throw InputError("invalid intelligibility configuration");
  }

  AudioBuffer c10 = resample(clean, cfg.fs);
  AudioBuffer p10 = resample(processed, cfg.fs);
  if (std::llabs(static_cast<long long>(c10.samples.size()) -
                 static_cast<long long>(p10.samples.size())) > 1) {
    throw InputError("intelligibility inputs differ in length (" +
                     std::to_string(clean.samples.size()) + " vs " +
                     std::to_string(processed.samples.size()) + " samples)");
  }
  const std::size_t len = std::min(c10.samples.size(), p10.samples.size());
  std::vector<double> x(c10.samples.begin(), c10.samples.begin() + static_cast<std::ptrdiff_t>(len));
  std::vector<double> y(p10.samples.begin(), p10.samples.begin() + static_cast<std::ptrdiff_t>(len));

  remove_silent_frames(x, y, cfg);

  std::size_t n_frames = 0;
  const auto px = power_spectra(x, cfg, &n_frames);
  std::size_t n_frames_y = 0;
  const auto py = power_spectra(y, cfg, &n_frames_y);
  if (n_frames < static_cast<std::size_t>(cfg.segment_len)) {
    throw InputError("too little active speech for an intelligibility estimate (need about " +
                     std::to_string((cfg.segment_len - 1) * cfg.hop + cfg.frame_len + 1) +
                     " active samples at " + std::to_string(cfg.fs) + " Hz)");
  }

  const auto bands = third_octave_bands(cfg);
  const std::size_t n_bins = static_cast<std::size_t>(cfg.fft_len) / 2 + 1;
  const std::size_t nb = bands.size();

  // Band envelopes: sqrt of band-summed power, bands x frames.
  std::vector<double> ex(nb * n_frames), ey(nb * n_frames);
  for (std::size_t t = 0; t < n_frames; ++t) {
    for (std::size_t j = 0; j < nb; ++j) {
      double sx = 0.0, sy = 0.0;
      for (std::size_t k = bands[j].lo; k < bands[j].hi; ++k) {
        sx += px[t * n_bins + k];
        sy += py[t * n_bins + k];
      }
      ex[j * n_frames + t] = std::sqrt(sx);
      ey[j * n_frames + t] = std::sqrt(sy);
    }
  }

  const int seg = cfg.segment_len;
  const double clip = 1.0 + std::pow(10.0, -cfg.beta_db / 20.0);
  std::vector<double> xs(static_cast<std::size_t>(seg)), ys(static_cast<std::size_t>(seg));
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t m = static_cast<std::size_t>(seg); m <= n_frames; ++m) {
    for (std::size_t j = 0; j < nb; ++j) {
      double px2 = 0.0, py2 = 0.0;
      for (int i = 0; i < seg; ++i) {
        const double vx = ex[j * n_frames + m - static_cast<std::size_t>(seg) +
                             static_cast<std::size_t>(i)];
        const double vy = ey[j * n_frames + m - static_cast<std::size_t>(seg) +
                             static_cast<std::size_t>(i)];
        xs[static_cast<std::size_t>(i)] = vx;
        ys[static_cast<std::size_t>(i)] = vy;
        px2 += vx * vx;
        py2 += vy * vy;
      }
      const double alpha = py2 > 0.0 ? std::sqrt(px2 / py2) : 0.0;
      for (int i = 0; i < seg; ++i) {
        const double bound = xs[static_cast<std::size_t>(i)] * clip;
        ys[static_cast<std::size_t>(i)] = std::min(ys[static_cast<std::size_t>(i)] * alpha, bound);
      }
      sum += correlation(xs, ys);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace maskbench
