#include "maskbench/masking.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "maskbench/digest.hpp"
#include "maskbench/errors.hpp"
#include "maskbench/rng.hpp"

namespace maskbench {

namespace {

/// Raised-cosine crossfade weight for position q in a span of length len
/// with ramp length r. Strictly positive at q = 0 so every in-span sample is
/// actually altered (which is what the sidecar's region bookkeeping states).
double ramp_weight(std::int64_t q, std::int64_t len, std::int64_t r) {
  if (r <= 0) return 1.0;
  std::int64_t from_end = len - 1 - q;
  std::int64_t edge = std::min(q, from_end);
  if (edge >= r) return 1.0;
  return 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(edge + 1) / static_cast<double>(r + 1)));
}

void validate_spec(const MaskSpec& spec, const std::vector<SampleRegion>& regions, int rate) {
  if (spec.ramp_ms < 0.0) throw InputError("ramp must be non-negative");
  if (spec.mode == MaskMode::additive) {
    if (spec.noise.kind == NoiseKind::silence) {
      throw InputError("additive masking with silence is a no-op; use replace mode");
    }
    if (!spec.snr_db.has_value()) {
      throw InputError("additive masking requires an SNR");
    }
  }
  const auto ramp = static_cast<std::int64_t>(std::llround(spec.ramp_ms / 1000.0 * rate));
  for (const auto& r : regions) {
    if (2 * ramp > r.end - r.start) {
      throw InputError("ramp of " + std::to_string(spec.ramp_ms) +
                       " ms exceeds half of a span of " +
                       std::to_string(static_cast<double>(r.end - r.start) / rate * 1000.0) +
                       " ms");
    }
  }
}

}  // namespace

std::vector<SampleRegion> sample_regions(const SpanSet& spans, const AudioBuffer& buffer) {
  std::vector<SampleRegion> regions;
  const auto n = static_cast<std::int64_t>(buffer.samples.size());
  for (const auto& s : spans.spans()) {
    auto s0 = static_cast<std::int64_t>(std::llround(s.start * buffer.sample_rate));
    auto s1 = static_cast<std::int64_t>(std::llround(s.end * buffer.sample_rate));
    if (s0 < 0 || s1 > n) {
      throw InputError("mask span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                       "] s lies outside the audio (duration " +
                       std::to_string(buffer.duration()) + " s)");
    }
    if (s1 > s0) regions.push_back({s0, s1});
  }
  return regions;
}

std::pair<AudioBuffer, std::optional<MaskSidecar>> apply_mask(const AudioBuffer& buffer,
                                                              const SpanSet& spans,
                                                              const MaskSpec& spec) {
  validate(buffer);
  const auto regions = sample_regions(spans, buffer);
  validate_spec(spec, regions, buffer.sample_rate);
  const auto ramp =
      static_cast<std::int64_t>(std::llround(spec.ramp_ms / 1000.0 * buffer.sample_rate));

  AudioBuffer out = buffer;
  MaskSidecar sidecar;
  sidecar.sample_rate = buffer.sample_rate;

  for (std::size_t idx = 0; idx < regions.size(); ++idx) {
    const auto& region = regions[idx];
    const auto len = region.end - region.start;

    NoiseSpec noise = spec.noise;
    noise.seed = Rng::derive(spec.noise.seed, idx);
    AudioBuffer masker = generate_samples(noise, static_cast<std::size_t>(len),
                                          buffer.sample_rate, &buffer);

    if (spec.snr_db.has_value() && spec.noise.kind != NoiseKind::silence) {
      AudioBuffer segment;
      segment.sample_rate = buffer.sample_rate;
      segment.samples.assign(buffer.samples.begin() + region.start,
                             buffer.samples.begin() + region.end);
      masker = scale_to_snr(masker, segment, *spec.snr_db);
    }

    if (spec.reversible) {
      sidecar.regions.push_back(region);
      sidecar.original.insert(sidecar.original.end(), buffer.samples.begin() + region.start,
                              buffer.samples.begin() + region.end);
    }

    for (std::int64_t q = 0; q < len; ++q) {
      const double w = ramp_weight(q, len, ramp);
      const double orig = buffer.samples[static_cast<std::size_t>(region.start + q)];
      const double m = masker.samples[static_cast<std::size_t>(q)];
      const double v = spec.mode == MaskMode::replace ? (1.0 - w) * orig + w * m : orig + w * m;
      out.samples[static_cast<std::size_t>(region.start + q)] = static_cast<float>(v);
    }
  }

  if (!spec.reversible) {
    return {std::move(out), std::nullopt};
  }
  sidecar.source_hash = digest(out);
  return {std::move(out), std::move(sidecar)};
}

AudioBuffer unmask(const AudioBuffer& masked, const MaskSidecar& sidecar) {
  validate(masked);
  if (digest(masked) != sidecar.source_hash) {
    throw IntegrityError(
        "sidecar does not match this audio (content digest mismatch); "
        "wrong file or the masked audio was altered");
  }
  if (sidecar.sample_rate != masked.sample_rate) {
    throw IntegrityError("sidecar sample rate differs from the masked audio");
  }

  AudioBuffer out = masked;
  std::size_t cursor = 0;
  std::int64_t prev_end = -1;
  for (const auto& region : sidecar.regions) {
    if (region.start < 0 || region.end < region.start ||
        region.end > static_cast<std::int64_t>(masked.samples.size())) {
      throw InputError("sidecar region out of range");
    }
    if (region.start < prev_end) {
      throw InputError("sidecar regions must be sorted and disjoint");
    }
    prev_end = region.end;
    const auto len = static_cast<std::size_t>(region.end - region.start);
    if (cursor + len > sidecar.original.size()) {
      throw InputError("sidecar payload shorter than its regions");
    }
    std::copy(sidecar.original.begin() + cursor, sidecar.original.begin() + cursor + len,
              out.samples.begin() + region.start);
    cursor += len;
  }
  if (cursor != sidecar.original.size()) {
    throw InputError("sidecar payload longer than its regions");
  }
  return out;
}

void write_sidecar(const MaskSidecar& sidecar, const std::string& path) {
  nlohmann::json manifest;
  manifest["version"] = 1;
  manifest["hash_algo"] = "fnv1a64";
  manifest["source_hash"] = to_hex(sidecar.source_hash);
  manifest["sample_rate"] = sidecar.sample_rate;
  auto regions = nlohmann::json::array();
  for (const auto& r : sidecar.regions) {
    regions.push_back({{"start_sample", r.start}, {"end_sample", r.end}});
  }
  manifest["regions"] = regions;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open sidecar for writing: " + path);
  out << manifest.dump() << '\n';
  for (float s : sidecar.original) {
    const auto v = std::bit_cast<std::uint32_t>(s);
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff),
                           static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
  }
  if (!out) throw InputError("failed writing sidecar: " + path);
}

MaskSidecar read_sidecar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open sidecar: " + path);
  std::string header;
  if (!std::getline(in, header)) throw InputError("sidecar is empty: " + path);

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("sidecar manifest is not valid JSON (" + std::string(e.what()) +
                     "): " + path);
  }

  MaskSidecar sidecar;
  try {
    if (manifest.at("version").get<int>() != 1) {
      throw InputError("unsupported sidecar version in " + path);
    }
    if (manifest.at("hash_algo").get<std::string>() != "fnv1a64") {
      throw InputError("unsupported sidecar hash algorithm in " + path);
    }
    sidecar.source_hash = from_hex(manifest.at("source_hash").get<std::string>());
    sidecar.sample_rate = manifest.at("sample_rate").get<int>();
    for (const auto& r : manifest.at("regions")) {
      sidecar.regions.push_back(
          {r.at("start_sample").get<std::int64_t>(), r.at("end_sample").get<std::int64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("sidecar manifest missing fields (" + std::string(e.what()) + "): " + path);
  }

  std::size_t total = 0;
  for (const auto& r : sidecar.regions) {
    if (r.end < r.start) throw InputError("sidecar region with negative length in " + path);
    total += static_cast<std::size_t>(r.end - r.start);
  }
  sidecar.original.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
      throw InputError("sidecar payload truncated: " + path);
    }
    const std::uint32_t v = static_cast<std::uint32_t>(bytes[0]) |
                            (static_cast<std::uint32_t>(bytes[1]) << 8) |
                            (static_cast<std::uint32_t>(bytes[2]) << 16) |
                            (static_cast<std::uint32_t>(bytes[3]) << 24);
    sidecar.original[i] = std::bit_cast<float>(v);
  }
  return sidecar;
}

}  // namespace maskbench
