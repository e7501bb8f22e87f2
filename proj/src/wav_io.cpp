#include "maskbench/wav_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "maskbench/errors.hpp"

namespace maskbench {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  bool seen = false;
};

}  // namespace

WavFile read_wav(const std::string& path, bool downmix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open WAV file: " + path);
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InputError("not a RIFF/WAVE file: " + path);
  }

  FmtChunk fmt;
  std::size_t data_offset = 0;
  std::uint32_t data_size = 0;
  bool data_seen = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    char id[5] = {0};
    std::memcpy(id, bytes.data() + pos, 4);
    std::uint32_t chunk_size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + chunk_size > bytes.size()) {
      throw InputError("truncated WAV file (chunk '" + std::string(id) +
                       "' runs past end): " + path);
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw InputError("malformed fmt chunk in " + path);
      }
      const unsigned char* p = bytes.data() + pos;
      fmt.format = read_u16(p);
      fmt.channels = read_u16(p + 2);
      fmt.sample_rate = read_u32(p + 4);
      fmt.bits_per_sample = read_u16(p + 14);
      fmt.seen = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_offset = pos;
      data_size = chunk_size;
      data_seen = true;
    }
    pos += chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!fmt.seen) throw InputError("WAV file has no fmt chunk: " + path);
  if (!data_seen) throw InputError("WAV file has no data chunk: " + path);
  if (fmt.sample_rate == 0) throw InputError("WAV file declares zero sample rate: " + path);
  if (fmt.channels == 0) throw InputError("WAV file declares zero channels: " + path);
  if (fmt.channels > 1 && !downmix) {
    throw InputError("WAV file has " + std::to_string(fmt.channels) +
                     " channels; pass the downmix flag to average them: " + path);
  }

  WavEncoding encoding;
  std::size_t bytes_per_sample;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    encoding = WavEncoding::pcm16;
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    encoding = WavEncoding::float32;
    bytes_per_sample = 4;
  } else {
    throw InputError("unsupported WAV encoding (format " + std::to_string(fmt.format) + ", " +
                     std::to_string(fmt.bits_per_sample) + " bits) in " + path);
  }

  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (data_size % frame_bytes != 0) {
    throw InputError("WAV data chunk length is not a whole number of frames: " + path);
  }
  const std::size_t n_frames = data_size / frame_bytes;

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt.sample_rate);
  out.samples.resize(n_frames);
  const unsigned char* data = bytes.data() + data_offset;
  const double channel_scale = 1.0 / fmt.channels;
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < fmt.channels; ++c) {
      const unsigned char* p = data + (i * fmt.channels + c) * bytes_per_sample;
      if (encoding == WavEncoding::pcm16) {
        auto v = static_cast<std::int16_t>(read_u16(p));
        acc += static_cast<double>(v) / 32768.0;
      } else {
        acc += static_cast<double>(std::bit_cast<float>(read_u32(p)));
      }
    }
    // Mono files skip the averaging so float32 reads stay bit-exact.
    out.samples[i] = fmt.channels == 1 && encoding == WavEncoding::float32
                         ? std::bit_cast<float>(read_u32(data + i * bytes_per_sample))
                         : static_cast<float>(acc * channel_scale);
  }
  return WavFile{std::move(out), encoding};
}

std::size_t write_wav(const AudioBuffer& buffer, const std::string& path,
                      WavEncoding encoding) {
  validate(buffer);
  const std::size_t n = buffer.samples.size();
  const std::size_t bytes_per_sample = encoding == WavEncoding::pcm16 ? 2 : 4;
  const std::uint32_t data_size = static_cast<std::uint32_t>(n * bytes_per_sample);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::pcm16 ? kFormatPcm : kFormatIeeeFloat);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buffer.sample_rate * bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(bytes_per_sample * 8));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_size);

  std::size_t clipped = 0;
  if (encoding == WavEncoding::pcm16) {
    for (float s : buffer.samples) {
      long v = std::lround(static_cast<double>(s) * 32768.0);
      if (v > 32767) {
        v = 32767;
        if (s > 1.0f) ++clipped;
      } else if (v < -32768) {
        v = -32768;
        ++clipped;
      }
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
  } else {
    // IEEE-float data has no inherent range limit; store samples verbatim so
    // a read-back is bit-exact (the reversible path depends on this).
    for (float s : buffer.samples) {
      put_u32(out, std::bit_cast<std::uint32_t>(s));
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw InputError("cannot open output WAV file: " + path);
  }
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) {
    throw InputError("failed writing WAV file: " + path);
  }
  return clipped;
}

}  // namespace maskbench
