// Fixed-width index masks used for point sets and opens.
#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace olab {

using Mask = std::uint64_t;

constexpr int kMaxPoints = 64;

inline int card(Mask m) { return std::popcount(m); }

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask bit(int i) { return Mask{1} << i; }

// Canonical total order on masks: by cardinality, then lexicographically on
// the ascending index sequence. Fixes every iteration order and hence every
// "first witness" report.
inline bool canonical_less(Mask a, Mask b) {
  int ca = card(a), cb = card(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  Mask diff = a ^ b;
  Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

// Indices of set bits, ascending.
inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

}  // namespace olab
