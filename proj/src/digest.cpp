#include "maskbench/digest.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "maskbench/errors.hpp"

namespace maskbench {

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::uint64_t feed_u32_le(std::uint64_t h, std::uint32_t v) {
  unsigned char bytes[4] = {
      static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
  return fnv1a64(bytes, 4, h);
}

}  // namespace

std::uint64_t digest(const AudioBuffer& buffer) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (float s : buffer.samples) {
    h = feed_u32_le(h, std::bit_cast<std::uint32_t>(s));
  }
  return feed_u32_le(h, static_cast<std::uint32_t>(buffer.sample_rate));
}

std::uint64_t digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open file for digest: " + path);
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  char chunk[1 << 16];
  while (in) {
    in.read(chunk, sizeof(chunk));
    h = fnv1a64(chunk, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t from_hex(const std::string& hex) {
  if (hex.empty() || hex.size() > 16) {
    throw InputError("bad hex digest: '" + hex + "'");
  }
  std::uint64_t v = 0;
  for (char c : hex) {
    v <<= 4;
    if (c >= '0' && c <= '9') {
      v |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v |= static_cast<std::uint64_t>(c - 'A' + 10);
    } else {
      throw InputError("bad hex digest: '" + hex + "'");
    }
  }
  return v;
}

}  // namespace maskbench
