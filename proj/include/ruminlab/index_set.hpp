#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace ruminlab {

/// Sorted index sets I ⊂ {1,…,2n+1} are stored as bitmasks: index i occupies
/// bit i−1. Supports n ≤ 15. The frame order is W_1..W_n = X, W_{n+1}..W_{2n} = Y,
/// W_{2n+1} = T, with dual coframe dx, dy, th.
using IndexMask = std::uint32_t;

inline int grade_of(IndexMask m) { return std::popcount(m); }

inline IndexMask full_mask(int dim) { return (IndexMask(1) << dim) - 1; }

/// Indices of a mask, ascending, 1-based.
inline std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  while (m) {
    int b = std::countr_zero(m);
    out.push_back(b + 1);
    m &= m - 1;
  }
  return out;
}

inline IndexMask mask_from_indices(const std::vector<int>& idx) {
  IndexMask m = 0;
  for (int i : idx) m |= IndexMask(1) << (i - 1);
  return m;
}

/// Sign of merging two disjoint ascending products W_a ∧ W_b into W_{a∪b}:
/// (−1)^{#inversions}, inversions being pairs (i∈a, j∈b) with i > j.
inline int merge_sign(IndexMask a, IndexMask b) {
  int inv = 0;
  IndexMask rest = a;
  while (rest) {
    int bit = std::countr_zero(rest);
    inv += std::popcount(b & (full_mask(bit)));
    rest &= rest - 1;
  }
  return (inv & 1) ? -1 : 1;
}

/// σ(I): number of couples (i,j) ∈ I × I^c with i > j; W_I ∧ W_{I^c} = (−1)^{σ(I)} W_{all}.
inline int complement_sign(IndexMask m, int dim) {
  return merge_sign(m, full_mask(dim) & ~m);
}

/// Printable name of frame vector W_i or coframe covector θ_i for group index n.
inline std::string frame_name(int i, int n, bool dual) {
  if (i <= n) return (dual ? "dx" : "X") + std::to_string(i);
  if (i <= 2 * n) return (dual ? "dy" : "Y") + std::to_string(i - n);
  return dual ? "th" : "T";
}

}  // namespace ruminlab
