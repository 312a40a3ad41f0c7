#include "tms/hitting_set.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "tms/errors.hpp"

namespace tms {

HittingSetInstance::HittingSetInstance(ElementSet universe_, std::vector<ElementSet> family_, long long k_)
    : universe(make_set(std::move(universe_))), k(k_) {
  if (k < 0) throw InvalidInstance("hitting set budget must be nonnegative");
  for (auto& s : family_) {
    s = make_set(std::move(s));
    if (s.empty()) throw InvalidInstance("empty set in hitting set family");
    if (!set_subset(s, universe)) throw InvalidInstance("family set not contained in universe");
  }
  std::sort(family_.begin(), family_.end());
  family_.erase(std::unique(family_.begin(), family_.end()), family_.end());
  family = std::move(family_);
}

SolveResult hs_solve_dp(const HittingSetInstance& hs, int family_cap) {
  const int m = static_cast<int>(hs.family.size());
  if (m > family_cap || m > 30)
    throw CapExceeded("hitting set family of " + std::to_string(m) + " sets exceeds DP cap " +
                      std::to_string(std::min(family_cap, 30)));
  SolveResult res;
  res.algorithm = "hitting-dp";
  res.stats["family_size"] = m;
  res.stats["universe_size"] = static_cast<long long>(hs.universe.size());
  if (m == 0) {
    res.yes = true;
    res.certificate = std::vector<int>{};
    res.stats["optimum"] = 0;
    return res;
  }

  // cover_mask[e] = sets containing element e (only elements that occur matter).
  std::map<int, std::uint32_t> cover_mask;
  for (int i = 0; i < m; ++i)
    for (int e : hs.family[i]) cover_mask[e] |= (1u << i);
  // (element, its cover mask) per set, for the DP inner loop.
  std::vector<std::vector<std::pair<int, std::uint32_t>>> set_masks(m);
  for (int i = 0; i < m; ++i)
    for (int e : hs.family[i]) set_masks[i].emplace_back(e, cover_mask[e]);

  const std::uint32_t full = (1u << m) - 1;
  const int kInf = m + 1;  // never need more picks than sets
  std::vector<int> dp(static_cast<size_t>(full) + 1, kInf);
  dp[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int lowest = std::countr_zero(mask);  // any hitting set must hit this set
    int best = kInf;
    for (const auto& [e, cm] : set_masks[lowest]) {
      int cand = dp[mask & ~cm];
      if (cand + 1 < best) best = cand + 1;
    }
    dp[mask] = best;
  }
  const int opt = dp[full];
  res.stats["optimum"] = opt;
  if (opt > hs.k) {
    res.yes = false;
    return res;
  }
  // Reconstruct deterministically: at each step take the smallest element of
  // the lowest-index unhit set that stays on an optimal path.
  std::vector<int> cert;
  std::uint32_t mask = full;
  while (mask) {
    int lowest = std::countr_zero(mask);
    for (const auto& [e, cm] : set_masks[lowest]) {
      std::uint32_t next = mask & ~cm;
      if (dp[next] + 1 == dp[mask]) {
        cert.push_back(e);
        mask = next;
        break;
      }
    }
  }
  std::sort(cert.begin(), cert.end());
  res.yes = true;
  res.certificate = std::move(cert);
  return res;
}

SolveResult hs_brute_force(const HittingSetInstance& hs, int universe_cap) {
  const int n = static_cast<int>(hs.universe.size());
  if (n > universe_cap)
    throw CapExceeded("hitting set universe of " + std::to_string(n) + " elements exceeds brute cap " +
                      std::to_string(universe_cap));
  SolveResult res;
  res.algorithm = "hitting-brute";
  res.stats["family_size"] = static_cast<long long>(hs.family.size());
  res.stats["universe_size"] = n;
  auto hits_all = [&](const std::vector<int>& subset_idx) {
    for (const auto& s : hs.family) {
      bool hit = false;
      for (int i : subset_idx)
        if (set_contains(s, hs.universe[i])) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  const int limit = static_cast<int>(std::min<long long>(hs.k, n));
  for (int size = 0; size <= limit; ++size) {
    std::vector<int> found;
    bool ok = for_each_combination(n, size, [&](const std::vector<int>& idx) {
      if (!hits_all(idx)) return false;
      found.reserve(idx.size());
      for (int i : idx) found.push_back(hs.universe[i]);
      return true;
    });
    if (ok) {
      res.yes = true;
      res.certificate = std::move(found);
      res.stats["optimum"] = size;
      return res;
    }
  }
  res.yes = false;
  return res;
}

std::optional<std::vector<ElementSet>> buss_reduce(const std::vector<ElementSet>& small_sets, long long k) {
  std::vector<ElementSet> sets;
  sets.reserve(small_sets.size());
  for (const auto& s : small_sets) {
    ElementSet t = make_set(s);
    if (t.empty() || t.size() > 2) throw InvalidInstance("buss_reduce expects sets of size 1 or 2");
    sets.push_back(std::move(t));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  std::vector<ElementSet> forced;
  while (true) {
    std::map<int, long long> occ;
    for (const auto& s : sets)
      for (int e : s) ++occ[e];
    int pick = -1;
    for (const auto& [e, cnt] : occ)
      if (cnt > k) {  // not picking e would need > k other distinct elements
        pick = e;
        break;
      }
    if (pick == -1) break;
    forced.push_back({pick});
    std::erase_if(sets, [&](const ElementSet& s) { return set_contains(s, pick); });
  }
  if (static_cast<long long>(sets.size()) > k * k + k) return std::nullopt;
  forced.insert(forced.end(), sets.begin(), sets.end());
  std::sort(forced.begin(), forced.end());
  return forced;
}

namespace {

struct Tagged {
  ElementSet set;       // core-stripped
  std::size_t index;    // position in the original family
};

// Erdos-Rado style constructive recursion over equal-size distinct sets.
std::optional<Sunflower> sunflower_rec(const std::vector<Tagged>& sets, int petals) {
  // Greedy maximal pairwise-disjoint subcollection, in input order.
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool ok = true;
    for (std::size_t j : pick)
      if (!sets_disjoint(sets[i].set, sets[j].set)) {
        ok = false;
        break;
      }
    if (ok) pick.push_back(i);
  }
  if (static_cast<int>(pick.size()) >= petals) {
    Sunflower sf;
    for (int i = 0; i < petals; ++i) sf.members.push_back(sets[pick[i]].index);
    return sf;
  }
  // Pigeonhole: the most frequent element lies in enough sets to recurse on.
  std::map<int, std::size_t> occ;
  for (const auto& t : sets)
    for (int e : t.set) ++occ[e];
  if (occ.empty()) return std::nullopt;
  int x = occ.begin()->first;
  for (const auto& [e, cnt] : occ)
    if (cnt > occ[x]) x = e;
  std::vector<Tagged> sub;
  for (const auto& t : sets)
    if (set_contains(t.set, x)) sub.push_back({set_minus(t.set, {x}), t.index});
  auto inner = sunflower_rec(sub, petals);
  if (!inner) return std::nullopt;
  inner->core = set_union(inner->core, {x});
  return inner;
}

unsigned long long sunflower_threshold(int d, long long kept) {
  // d! * kept^d, saturating; families at desk scale never approach overflow.
  unsigned long long t = 1;
  for (int i = 2; i <= d; ++i) t *= static_cast<unsigned long long>(i);
  for (int i = 0; i < d; ++i) {
    if (t > (1ull << 48)) return 1ull << 48;
    t *= static_cast<unsigned long long>(kept);
  }
  return t;
}

}  // namespace

std::optional<Sunflower> find_sunflower(const std::vector<ElementSet>& family, int petals) {
  if (petals < 2) throw InvalidInstance("find_sunflower needs petals >= 2");
  if (family.empty()) return std::nullopt;
  const std::size_t d = family.front().size();
  std::vector<Tagged> sets;
  sets.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    ElementSet s = make_set(family[i]);
    if (s.size() != d) throw InvalidInstance("find_sunflower expects sets of one common size");
    sets.push_back({std::move(s), i});
  }
  {
    auto copy = sets;
    std::sort(copy.begin(), copy.end(), [](const Tagged& a, const Tagged& b) { return a.set < b.set; });
    for (std::size_t i = 1; i < copy.size(); ++i)
      if (copy[i].set == copy[i - 1].set) throw InvalidInstance("find_sunflower expects distinct sets");
  }
  return sunflower_rec(sets, petals);
}

std::vector<CoredFamily> effective_size_kernel(const std::vector<CoredFamily>& families, int d, long long k) {
  if (d < 0 || k < 0) throw InvalidInstance("effective_size_kernel: bad d or k");
  std::vector<CoredFamily> out;
  out.reserve(families.size());
  for (const auto& fam : families) {
    ElementSet core = make_set(fam.core);
    std::vector<ElementSet> sets;
    for (const auto& raw : fam.sets) {
      ElementSet s = make_set(raw);
      if (!set_subset(core, s)) throw InvalidInstance("declared core not contained in a family set");
      if (static_cast<int>(s.size() - core.size()) > d)
        throw InvalidInstance("effective size bound violated");
      sets.push_back(std::move(s));
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    // Group core-stripped sets by exact size; Erdos-Rado needs uniform sizes,
    // so the while-loop threshold applies per group. Total kept is still
    // sum_{s<=d} s!(k+1)^s = O(k^d d!).
    std::map<std::size_t, std::vector<ElementSet>> groups;  // stripped size -> original sets
    for (const auto& s : sets) groups[set_minus(s, core).size()].push_back(s);
    std::vector<ElementSet> kept;
    for (auto& [size, group] : groups) {
      const unsigned long long threshold = sunflower_threshold(static_cast<int>(size), k + 1);
      while (group.size() > threshold) {
        std::vector<ElementSet> stripped;
        stripped.reserve(group.size());
        for (const auto& s : group) stripped.push_back(set_minus(s, core));
        auto sf = find_sunflower(stripped, static_cast<int>(k) + 2);
        if (!sf) throw InternalError("sunflower guaranteed above threshold but not found");
        // Keep k+1 of the sunflower's k+2 sets: drop the highest-index member.
        std::size_t drop = sf->members.back();
        group.erase(group.begin() + static_cast<std::ptrdiff_t>(drop));
      }
      kept.insert(kept.end(), group.begin(), group.end());
    }
    std::sort(kept.begin(), kept.end());
    out.push_back({std::move(kept), std::move(core)});
  }
  return out;
}

}  // namespace tms
