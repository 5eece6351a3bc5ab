#pragma once

#include <array>
#include <cstdint>

namespace spinchain {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Stateless: every output block is a pure function of (counter, key), so a
/// draw addressed by (seed, realization, index) is reproducible regardless of
/// which thread asks for it or in what order.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Uniform double in [0, 1) keyed by (seed, stream, index); 53-bit resolution.
constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint32_t index) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(stream),
                                static_cast<std::uint32_t>(stream >> 32), index, 0u};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  const std::uint64_t bits = (std::uint64_t{out[0]} << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// SplitMix64 finalizer, used to derive sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace spinchain
