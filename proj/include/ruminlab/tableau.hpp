#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ruminlab {

/// Two-row Young tableau. Standard means rows and columns strictly increase;
/// the empty tableau (both rows empty) is allowed.
struct YoungTableau {
  std::vector<int> row1, row2;

  bool operator==(const YoungTableau& o) const { return row1 == o.row1 && row2 == o.row2; }

  bool is_standard() const {
    if (row1.size() < row2.size()) return false;
    auto increasing = [](const std::vector<int>& r) {
      for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i - 1] >= r[i]) return false;
      return true;
    };
    if (!increasing(row1) || !increasing(row2)) return false;
    for (std::size_t j = 0; j < row2.size(); ++j)
      if (row1[j] >= row2[j]) return false;
    return true;
  }
};

inline std::string to_string(const YoungTableau& t) {
  auto row = [](const std::vector<int>& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + "]";
  };
  return row(t.row1) + row(t.row2);
}

/// All standard Young tableaux on the given elements with first row of length
/// l1, ordered lexicographically by first row. Throws on infeasible shape.
inline std::vector<YoungTableau> syt_enumerate(std::vector<int> elements, int l1) {
  std::sort(elements.begin(), elements.end());
  int m = static_cast<int>(elements.size());
  if (l1 < 0 || l1 > m || l1 < m - l1)
    throw std::invalid_argument("syt_enumerate: infeasible shape");
  std::vector<YoungTableau> out;
  std::vector<int> pick(l1);
  // choose(i, start): subsets in lexicographic order of the sorted element list
  auto rec = [&](auto&& self, int i, int start) -> void {
    if (i == l1) {
      YoungTableau t;
      std::vector<bool> used(m, false);
      for (int j = 0; j < l1; ++j) {
        t.row1.push_back(elements[pick[j]]);
        used[pick[j]] = true;
      }
      for (int j = 0; j < m; ++j)
        if (!used[j]) t.row2.push_back(elements[j]);
      if (t.is_standard()) out.push_back(std::move(t));
      return;
    }
    for (int s = start; s < m; ++s) {
      pick[i] = s;
      self(self, i + 1, s + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

inline std::uint64_t binomial(int m, int l) {
  if (l < 0 || l > m) return 0;
  std::uint64_t r = 1;
  l = std::min(l, m - l);
  for (int i = 1; i <= l; ++i) r = r * static_cast<std::uint64_t>(m - l + i) / i;
  return r;
}

/// Number of standard two-row tableaux on m elements with first row length l:
/// C(m,l) − C(m,l+1) (hook length formula), with C(m,m+1) = 0.
inline std::uint64_t syt_count(int m, int l) {
  if (m < 0 || 2 * l < m || l > m) throw std::invalid_argument("syt_count: need m <= 2l <= 2m");
  return binomial(m, l) - binomial(m, l + 1);
}

}  // namespace ruminlab
