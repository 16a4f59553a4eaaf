// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace actris {

/// Error raised for malformed configuration or artifact files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Error raised for file I/O failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Error raised when an oracle or routine is asked to operate beyond its
/// supported problem size (e.g. exhaustive enumeration above the element cap).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// FNV-1a 64-bit hash over a byte string. Used for config/scenario/manifest
/// provenance fingerprints; stability across platforms matters, cryptographic
/// strength does not.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hex rendering of a 64-bit hash, zero-padded to 16 digits.
std::string hash_hex(std::uint64_t h);

/// Sum of a range using fixed pairwise (binary-tree) association, so the
/// result does not depend on accumulation order or thread count.
double pairwise_sum(std::span<const double> values);

/// Runs fn(i) for i in [0, n) over at most `threads` workers on contiguous
/// index chunks. fn must only write to per-index state. threads <= 1 runs
/// inline.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Default worker count: ACTRIS_THREADS env var if set, else hardware
/// concurrency.
int default_thread_count();

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename).
void atomic_write_file(const std::string& path, std::string_view content);

/// Reads an entire file into a string.
std::string read_file(const std::string& path);

/// Serialized stand-in for an unbounded cap. Serialized artifacts never carry
/// raw floating-point infinities.
inline constexpr const char* kUnboundedTag = "unbounded";

/// Formats a double with enough digits to round-trip exactly ("%.17g").
std::string format_double(double v);

}  // namespace actris
