#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace pdc {

// Counter-based generator (Philox 4x32, 10 rounds). A draw is a pure function
// of (seed, stream, index), so independent substreams can be generated in
// parallel and always reproduce bit-identically for a given seed.
namespace philox {

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
  const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                          std::uint64_t index) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    round_once(ctr, key);
  }
  return ctr;
}

inline double to_u01(std::uint32_t hi, std::uint32_t lo) {
  // 52 mantissa bits, offset by half an ulp so the result lies strictly in
  // (0,1). With 52 bits every m + 0.5 is exactly representable, so no double
  // rounding can push the top of the range onto 1.0.
  const std::uint64_t m = (static_cast<std::uint64_t>(hi) << 20) | (lo >> 12);
  return (static_cast<double>(m) + 0.5) * 0x1p-52;
}

}  // namespace philox

// Two independent uniforms in (0,1) for a given counter index.
inline std::pair<double, double> u01_pair_at(std::uint64_t seed, std::uint64_t stream,
                                             std::uint64_t index) {
  const auto b = philox::block(seed, stream, index);
  return {philox::to_u01(b[0], b[1]), philox::to_u01(b[2], b[3])};
}

// Two independent standard normals for a given counter index (Box-Muller).
inline std::pair<double, double> normal_pair_at(std::uint64_t seed, std::uint64_t stream,
                                                std::uint64_t index) {
  const auto [u1, u2] = u01_pair_at(seed, stream, index);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.2831853071795864769 * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

// Sequential convenience wrapper over the counter-based core.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  double u01() {
    if (have_u_) {
      have_u_ = false;
      return spare_u_;
    }
    const auto [a, b] = u01_pair_at(seed_, stream_, index_++);
    spare_u_ = b;
    have_u_ = true;
    return a;
  }

  double normal() {
    if (have_n_) {
      have_n_ = false;
      return spare_n_;
    }
    const auto [a, b] = normal_pair_at(seed_, stream_, index_++);
    spare_n_ = b;
    have_n_ = true;
    return a;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
  double spare_u_ = 0.0, spare_n_ = 0.0;
  bool have_u_ = false, have_n_ = false;
};

}  // namespace pdc
