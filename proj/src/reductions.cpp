#include "tms/reductions.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "tms/errors.hpp"
#include "tms/util.hpp"

namespace tms {

void RbdsInstance::validate() const {
  if (blue_count < 0 || red_count < 0) throw InvalidInstance("rbds: negative side size");
  if (k < 0) throw InvalidInstance("rbds: k must be nonnegative");
  for (const auto& [b, r] : edges) {
    if (b < 0 || b >= blue_count) throw InvalidInstance("rbds: blue endpoint out of range");
    if (r < 0 || r >= red_count) throw InvalidInstance("rbds: red endpoint out of range");
  }
  std::vector<std::pair<int, int>> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInstance("rbds: duplicate edge");
}

RbdsReduction gen_from_rbds(const RbdsInstance& r) {
  r.validate();
  RbdsReduction out;
  out.blue_count = r.blue_count;
  out.red_count = r.red_count;

  std::vector<char> dominated(static_cast<size_t>(r.red_count), 0);
  for (const auto& [b, rv] : r.edges) {
    (void)b;
    dominated[static_cast<size_t>(rv)] = 1;
  }
  if (std::find(dominated.begin(), dominated.end(), 0) != dominated.end()) {
    out.trivially_no = true;
    return out;
  }

  Graph g(r.blue_count + 2 * r.red_count);
  for (const auto& [b, rv] : r.edges) {
    g.add_edge(b, out.red_vertex(rv));
    g.add_edge(b, out.twin_vertex(rv));
  }

  TmsInstance inst;
  inst.graph = std::move(g);
  for (int rv = 0; rv < r.red_count; ++rv)
    inst.terminals.emplace_back(out.red_vertex(rv), out.twin_vertex(rv));
  inst.k = r.k;
  inst.validate();
  out.instance = std::move(inst);
  return out;
}

std::optional<std::vector<int>> rbds_brute_force(const RbdsInstance& r, int blue_cap) {
  r.validate();
  if (r.blue_count > blue_cap) throw CapExceeded("rbds_brute_force: blue side exceeds cap");

  std::vector<std::uint64_t> neighbor_mask(static_cast<size_t>(r.red_count), 0);
  for (const auto& [b, rv] : r.edges) neighbor_mask[static_cast<size_t>(rv)] |= 1ULL << b;
  if (std::find(neighbor_mask.begin(), neighbor_mask.end(), 0ULL) != neighbor_mask.end())
    return std::nullopt;

  const int max_size = static_cast<int>(std::min<long long>(r.k, r.blue_count));
  std::optional<std::vector<int>> winner;
  for (int size = 0; size <= max_size && !winner; ++size) {
    for_each_combination(r.blue_count, size, [&](const std::vector<int>& pick) {
      std::uint64_t mask = 0;
      for (int b : pick) mask |= 1ULL << b;
      for (std::uint64_t nm : neighbor_mask)
        if (!(nm & mask)) return false;
      winner = pick;
      return true;
    });
  }
  return winner;
}

RbdsInstance gen_random_rbds(int blue, int red, double edge_prob, long long k, std::uint64_t seed) {
  if (blue < 0 || red < 0) throw InvalidInstance("gen_random_rbds: negative side size");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InvalidInstance("gen_random_rbds: edge_prob out of [0,1]");
  if (k < 0) throw InvalidInstance("gen_random_rbds: k must be nonnegative");

  std::mt19937_64 rng(seed);
  auto draw_unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  RbdsInstance out;
  out.blue_count = blue;
  out.red_count = red;
  out.k = k;
  for (int b = 0; b < blue; ++b)
    for (int r = 0; r < red; ++r)
      if (draw_unit() < edge_prob) out.edges.emplace_back(b, r);
  return out;
}

void McisInstance::validate() const {
  if (parts.empty()) throw InvalidInstance("mcis: need at least one part");
  const size_t n = parts[0].size();
  if (n == 0) throw InvalidInstance("mcis: empty part");
  if (n % 2 == 0) throw InvalidInstance("mcis: part size must be odd");
  std::vector<char> seen(static_cast<size_t>(graph.vertex_count()), 0);
  size_t covered = 0;
  for (const auto& part : parts) {
    if (part.size() != n) throw InvalidInstance("mcis: parts must have equal size");
    for (int v : part) {
      if (v < 0 || v >= graph.vertex_count()) throw InvalidInstance("mcis: part vertex out of range");
      if (seen[static_cast<size_t>(v)]) throw InvalidInstance("mcis: vertex in two parts");
      seen[static_cast<size_t>(v)] = 1;
      ++covered;
    }
  }
  if (covered != static_cast<size_t>(graph.vertex_count()))
    throw InvalidInstance("mcis: parts do not cover all vertices");
}

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

McisReduction gen_from_mcis(const McisInstance& m, const Rational& alpha) {
  m.validate();
  if (alpha.num <= 0 || 2 * alpha.num > alpha.den)
    throw InvalidInstance("gen_from_mcis: alpha must lie in (0, 1/2]");
  const int k = m.classes();
  const int n = m.class_size();
  if (n < 3) throw InvalidInstance("gen_from_mcis: part size must be >= 3");

  McisReduction out;
  out.k = k;
  out.n = n;
  // Spokes keep distinct blocks exactly 2*ell apart; the pendant length makes
  // the middle-selector forcing radius (n-1)/2 integer-exact under alpha.
  out.ell = ceil_div(static_cast<long long>(n) * alpha.den, 2 * alpha.num);
  out.ell_p = ceil_div(static_cast<long long>(n - 1) * alpha.den, alpha.num);

  const long long total = 1 + static_cast<long long>(k) * out.block_size();
  if (total > 10'000'000) throw InvalidInstance("gen_from_mcis: gadget too large");

  Graph g(static_cast<int>(total));
  const int mid = (n - 1) / 2;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      g.add_edge(out.u(i, j), out.u(i, j + 1));
      g.add_edge(out.u_prime(i, j), out.u_prime(i, j + 1));
    }
    g.add_edge(out.z(i), out.u_prime(i, 0));
    g.add_edge(out.z(i), out.u(i, n - 1));
    g.add_edge(out.z_prime(i), out.u_prime(i, n - 1));
    g.add_edge(out.z_prime(i), out.u(i, 0));

    int prev = out.p(i);
    for (int step = 1; step < out.ell_p; ++step) {
      g.add_edge(prev, out.pendant(i, step));
      prev = out.pendant(i, step);
    }
    g.add_edge(prev, out.u(i, mid));

    for (int j = 0; j < n; ++j) {
      int tail = out.u(i, j);
      for (int step = 1; step < out.ell; ++step) {
        g.add_edge(tail, out.spoke(i, j, step));
        tail = out.spoke(i, j, step);
      }
      g.add_edge(tail, out.bridge());

      tail = out.u_prime(i, j);
      for (int step = 1; step < out.ell; ++step) {
        g.add_edge(tail, out.spoke_prime(i, j, step));
        tail = out.spoke_prime(i, j, step);
      }
      g.add_edge(tail, out.bridge());
    }
  }

  std::vector<std::pair<int, int>> terminals;
  for (int i = 0; i < k; ++i) terminals.emplace_back(out.u(i, mid), out.p(i));

  std::vector<std::pair<int, int>> where(static_cast<size_t>(m.graph.vertex_count()));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) where[static_cast<size_t>(m.parts[i][j])] = {i, j};
  for (const auto& [a, b] : m.graph.edges()) {
    auto [ia, ja] = where[static_cast<size_t>(a)];
    auto [ib, jb] = where[static_cast<size_t>(b)];
    if (ia == ib) continue;
    if (ia > ib) {
      std::swap(ia, ib);
      std::swap(ja, jb);
    }
    terminals.emplace_back(out.u_prime(ia, ja), out.u_prime(ib, jb));
  }
  std::sort(terminals.begin(), terminals.end());

  out.instance.graph = std::move(g);
  out.instance.terminals = std::move(terminals);
  out.instance.k = k;
  out.instance.alpha = alpha;
  out.instance.validate();
  return out;
}

std::optional<std::vector<int>> mcis_brute_force(const McisInstance& m) {
  m.validate();
  const int k = m.classes();
  const int n = m.class_size();
  long long tuples = 1;
  for (int i = 0; i < k; ++i) {
    tuples *= n;
    if (tuples > 1'000'000) throw CapExceeded("mcis_brute_force: n^k exceeds cap");
  }

  std::vector<int> pos(static_cast<size_t>(k), 0);
  while (true) {
    bool independent = true;
    for (int i = 0; i < k && independent; ++i)
      for (int j = i + 1; j < k && independent; ++j)
        if (m.graph.has_edge(m.parts[i][pos[i]], m.parts[j][pos[j]])) independent = false;
    if (independent) {
      std::vector<int> pick(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = m.parts[i][pos[i]];
      return make_set(std::move(pick));
    }
    int i = k - 1;
    while (i >= 0 && pos[i] == n - 1) pos[i--] = 0;
    if (i < 0) return std::nullopt;
    ++pos[i];
  }
}

McisInstance gen_random_mcis(int k, int n, double edge_prob, std::uint64_t seed) {
  if (k < 1) throw InvalidInstance("gen_random_mcis: need k >= 1");
  if (n < 1 || n % 2 == 0) throw InvalidInstance("gen_random_mcis: n must be odd and >= 1");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InvalidInstance("gen_random_mcis: edge_prob out of [0,1]");

  std::mt19937_64 rng(seed);
  auto draw_unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  McisInstance out;
  out.graph = Graph(k * n);
  out.parts.assign(static_cast<size_t>(k), {});
  for (int i = 0; i < k; ++i) {
    out.parts[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) out.parts[static_cast<size_t>(i)][static_cast<size_t>(j)] = i * n + j;
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (draw_unit() < edge_prob) out.graph.add_edge(i * n + a, j * n + b);
  return out;
}

}  // namespace tms
