#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "maskbench/audio_buffer.hpp"

namespace maskbench {

/// 64-bit FNV-1a over a byte range. Not cryptographic; used to bind sidecars
/// to the audio they reverse and to record input provenance in reports.
std::uint64_t fnv1a64(const void* data, std::size_t n,
                      std::uint64_t seed = 0xcbf29ce484222325ull);

/// Digest of an AudioBuffer: every sample serialized as little-endian
/// float32, followed by the sample rate as little-endian uint32. Endianness
/// is pinned so the value is stable across platforms.
std::uint64_t digest(const AudioBuffer& buffer);

/// Digest of a file's raw bytes. Throws InputError if unreadable.
std::uint64_t digest_file(const std::string& path);

std::string to_hex(std::uint64_t value);
std::uint64_t from_hex(const std::string& hex);

}  // namespace maskbench
