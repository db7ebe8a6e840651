#pragma once

#include <array>
#include <cstdint>

namespace cantorqc {

// Philox-4x64, 10 rounds: keyed counter-based generator. Every
// (key, counter) cell is an independent draw, so parallel sampling is
// reproducible regardless of scheduling. Round function and constants
// follow the Random123 reference.
inline std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> x,
                                               std::array<std::uint64_t, 2> key) {
  constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
  constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
  constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
  constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

  auto mulhilo = [](std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
  };

  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    std::uint64_t lo0 = mulhilo(kMul0, x[0], hi0);
    std::uint64_t lo1 = mulhilo(kMul1, x[2], hi1);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return x;
}

/// Maps a word to the open interval (0,1): 52 uniform bits centered away
/// from both endpoints. (k + 1/2) * 2^-52 is exactly representable for
/// every k < 2^52, so no value rounds onto an endpoint.
inline double u64_to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1p-52;
}

}  // namespace cantorqc
