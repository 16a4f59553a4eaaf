// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace actris {

/// Philox4x32-10 counter-based generator (Salmon et al. keyed block cipher).
///
/// Seeding scheme used throughout the toolkit: the 64-bit master seed forms
/// the key; the 128-bit counter is laid out as
///
///   word 0 : running draw index inside the stream
///   word 1 : low 32 bits of the stream id
///   word 2 : high 32 bits of the stream id
///   word 3 : domain tag
///
/// so every (seed, stream, domain) triple is an independent substream that can
/// be generated in any order by concurrent workers. Scenario sampling assigns
/// stream = sample index and one domain tag per channel link, which keeps a
/// given link's draws identical across runs that differ only in the number of
/// RIS elements or interferers.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream, std::uint32_t domain);

  /// Raw 4x32 output block for the given block index (stateless).
  std::array<std::uint32_t, 4> block(std::uint32_t index) const;

  /// Next uniform double in (0, 1].
  double next_open_closed();

  /// Next uniform double in [0, 1).
  double next_closed_open();

  /// Next standard normal via Box-Muller on one counter block.
  double next_normal();

  /// Next circularly-symmetric complex normal with unit variance
  /// (real and imaginary parts each N(0, 1/2)).
  std::complex<double> next_cnormal();

  /// Next uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> prefix_;  // counter words 1..3
  std::uint32_t draw_ = 0;
  // Box-Muller produces pairs; the spare normal is cached.
  bool have_spare_ = false;
  double spare_ = 0.0;

  std::array<std::uint64_t, 2> next_u64_pair();
};

/// Domain tags for the per-sample link substreams.
namespace rng_domain {
inline constexpr std::uint32_t kDirect = 0;        // satellite -> receiver
inline constexpr std::uint32_t kSatRis = 1;        // satellite -> RIS
inline constexpr std::uint32_t kRisRx = 2;         // RIS -> receiver
inline constexpr std::uint32_t kInterfererBase = 8;  // 8+2m direct, 9+2m sat->RIS
inline constexpr std::uint32_t kSearch = 0xA0000000u;  // heuristic search streams
inline std::uint32_t interferer_direct(int m) { return kInterfererBase + 2u * static_cast<std::uint32_t>(m); }
inline std::uint32_t interferer_sat_ris(int m) { return kInterfererBase + 2u * static_cast<std::uint32_t>(m) + 1u; }
}  // namespace rng_domain

}  // namespace actris
