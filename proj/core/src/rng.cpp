// SPDX-License-Identifier: Apache-2.0
#include "actris/rng.hpp"

#include <cmath>

namespace actris {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline double u64_to_closed_open(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double u64_to_open_closed(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream, std::uint32_t domain)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      prefix_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), domain} {}

std::array<std::uint32_t, 4> Philox::block(std::uint32_t index) const {
  std::array<std::uint32_t, 4> ctr = {index, prefix_[0], prefix_[1], prefix_[2]};
  std::array<std::uint32_t, 2> key = key_;
  for (int r = 0; r < 10; ++r) {
    round_once(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<std::uint64_t, 2> Philox::next_u64_pair() {
  const auto b = block(draw_++);
  const std::uint64_t a = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  const std::uint64_t c = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
  return {a, c};
}

double Philox::next_open_closed() {
  return u64_to_open_closed(next_u64_pair()[0]);
}

double Philox::next_closed_open() {
  return u64_to_closed_open(next_u64_pair()[0]);
}

double Philox::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const auto pair = next_u64_pair();
  const double u1 = u64_to_open_closed(pair[0]);
  const double u2 = u64_to_closed_open(pair[1]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Philox::next_cnormal() {
  const auto pair = next_u64_pair();
  const double u1 = u64_to_open_closed(pair[0]);
  const double u2 = u64_to_closed_open(pair[1]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return {radius * std::cos(angle) * inv_sqrt2, radius * std::sin(angle) * inv_sqrt2};
}

std::uint64_t Philox::next_below(std::uint64_t n) {
  // Rejection-free modulo is fine here; streams feeding this are heuristic
  // search, not statistics.
  return next_u64_pair()[0] % n;
}

}  // namespace actris
