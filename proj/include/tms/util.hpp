#pragma once

#include <algorithm>
#include <vector>

namespace tms {

// Sets of vertex ids are kept as sorted, duplicate-free vectors throughout.
using ElementSet = std::vector<int>;

inline ElementSet make_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const ElementSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline ElementSet set_intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool set_subset(const ElementSet& a, const ElementSet& b) {  // a subseteq b
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool sets_disjoint(const ElementSet& a, const ElementSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return false;
  }
  return true;
}

// Visits all size-r subsets of {0,..,n-1} in lexicographic order until f returns true;
// returns true iff some subset did. f receives the subset as a sorted index vector.
template <typename F>
bool for_each_combination(int n, int r, F&& f) {
  if (r < 0 || r > n) return false;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace tms
