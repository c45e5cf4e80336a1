#pragma once

#include <cstdint>

namespace fphase {

// Monomials are bitsets over generator ids; 128 bits bounds the per-workspace
// generator budget.
using Mono = unsigned __int128;
constexpr int kMaxGenerators = 128;

inline Mono mono_bit(int id) { return Mono(1) << id; }

inline int popcount128(Mono m) {
  return __builtin_popcountll(static_cast<uint64_t>(m)) +
         __builtin_popcountll(static_cast<uint64_t>(m >> 64));
}

inline int lowest_bit128(Mono m) {  // m != 0
  uint64_t lo = static_cast<uint64_t>(m);
  if (lo) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<uint64_t>(m >> 64));
}

// Parity of the number of transpositions needed to merge the (sorted)
// generator lists of two disjoint monomials: for each bit of b, count the
// bits of a strictly above it.
inline bool merge_sign_negative(Mono a, Mono b) {
  int swaps = 0;
  while (b) {
    int j = lowest_bit128(b);
    b &= b - 1;
    if (j + 1 < kMaxGenerators) swaps += popcount128(a >> (j + 1));
  }
  return swaps & 1;
}

}  // namespace fphase
