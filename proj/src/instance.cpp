#include "tms/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "tms/errors.hpp"

#include "json.hpp"

namespace tms {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den <= 0 || num < 0) throw InvalidInstance("alpha must be a nonnegative rational with positive denominator");
  long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

void TmsInstance::validate() const {
  const int n = graph.vertex_count();
  if (k < 0) throw InvalidInstance("k must be nonnegative");
  std::vector<std::pair<int, int>> seen;
  for (const auto& [u, v] : terminals) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InvalidInstance("terminal vertex out of range");
    if (u > v) throw InvalidInstance("terminal pair not normalized");
    seen.emplace_back(u, v);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidInstance("duplicate terminal pair");
  auto comp = graph.component_ids();
  for (const auto& [u, v] : terminals)
    if (comp[u] != comp[v]) throw InvalidInstance("terminal pair spans two components");
}

std::string SolveResult::to_json() const {
  nlohmann::json j;
  j["verdict"] = yes ? "YES" : "NO";
  if (certificate)
    j["certificate"] = *certificate;
  else
    j["certificate"] = nullptr;
  j["algorithm"] = algorithm;
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [key, val] : stats) s[key] = val;
  j["stats"] = s;
  return j.dump();  // nlohmann objects iterate in key order: deterministic bytes
}

TmsInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int n = 0;
  long long m = 0, num_terminals = 0;
  long long edges_seen = 0, terminals_seen = 0;
  bool have_k = false, have_alpha = false;
  TmsInstance inst;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;
    auto want_int = [&](const char* what) {
      long long x;
      if (!(ls >> x)) throw ParseError(lineno, std::string("expected ") + what);
      return x;
    };
    if (tag == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string kind;
      if (!(ls >> kind) || kind != "tms") throw ParseError(lineno, "expected 'p tms <n> <m> <numTerminals>'");
      long long nn = want_int("vertex count");
      m = want_int("edge count");
      num_terminals = want_int("terminal count");
      if (nn < 0 || m < 0 || num_terminals < 0) throw ParseError(lineno, "negative count in header");
      n = static_cast<int>(nn);
      inst.graph = Graph(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "header 'p tms ...' must come first");
    if (tag == "e") {
      long long u = want_int("edge endpoint");
      long long v = want_int("edge endpoint");
      Weight w = 1;
      if (ls >> w) {
        if (w <= 0) throw ParseError(lineno, "nonpositive edge weight");
      }
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "edge endpoint out of range");
      if (u == v) throw ParseError(lineno, "self-loop");
      try {
        inst.graph.add_edge(static_cast<int>(u) - 1, static_cast<int>(v) - 1, w);
      } catch (const InvalidInstance& e) {
        throw ParseError(lineno, e.what());
      }
      ++edges_seen;
    } else if (tag == "t") {
      long long u = want_int("terminal vertex");
      long long v = want_int("terminal vertex");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "terminal vertex out of range");
      int a = static_cast<int>(std::min(u, v)) - 1;
      int b = static_cast<int>(std::max(u, v)) - 1;
      inst.terminals.emplace_back(a, b);
      ++terminals_seen;
    } else if (tag == "k") {
      if (have_k) throw ParseError(lineno, "duplicate k line");
      inst.k = want_int("budget");
      if (inst.k < 0) throw ParseError(lineno, "k must be nonnegative");
      have_k = true;
    } else if (tag == "a") {
      if (have_alpha) throw ParseError(lineno, "duplicate a line");
      long long p = want_int("alpha numerator");
      long long q = want_int("alpha denominator");
      if (p < 0 || q <= 0) throw ParseError(lineno, "alpha must be nonnegative with positive denominator");
      inst.alpha = Rational(p, q);
      have_alpha = true;
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (!have_k) throw ParseError(lineno, "missing k line");
  if (edges_seen != m) throw InvalidInstance("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges_seen));
  if (terminals_seen != num_terminals)
    throw InvalidInstance("header declares " + std::to_string(num_terminals) + " terminal pairs, found " +
                          std::to_string(terminals_seen));
  inst.validate();
  return inst;
}

std::string write_instance(const TmsInstance& inst) {
  std::ostringstream out;
  const int n = inst.graph.vertex_count();
  auto es = inst.graph.edges();  // sorted, u < v
  auto ts = inst.terminals;
  std::sort(ts.begin(), ts.end());
  out << "p tms " << n << ' ' << es.size() << ' ' << ts.size() << '\n';
  for (const auto& [u, v] : es) {
    out << "e " << u + 1 << ' ' << v + 1;
    Weight w = inst.graph.edge_weight(u, v);
    if (w != 1) out << ' ' << w;
    out << '\n';
  }
  for (const auto& [u, v] : ts) out << "t " << u + 1 << ' ' << v + 1 << '\n';
  out << "k " << inst.k << '\n';
  if (!inst.alpha.is_zero()) out << "a " << inst.alpha.num << ' ' << inst.alpha.den << '\n';
  return out.str();
}

TmsInstance gen_random(const RandomSpec& spec) {
  if (spec.n < 1) throw InvalidInstance("gen_random: n must be >= 1");
  if (spec.edge_prob < 0.0 || spec.edge_prob > 1.0) throw InvalidInstance("gen_random: edge_prob out of [0,1]");
  if (spec.weight_min < 1 || spec.weight_min > spec.weight_max)
    throw InvalidInstance("gen_random: need 1 <= weight_min <= weight_max");
  if (spec.k < 0) throw InvalidInstance("gen_random: k must be nonnegative");
  const long long max_pairs = static_cast<long long>(spec.n) * (spec.n + 1) / 2;
  if (spec.num_terminals < 0 || spec.num_terminals > max_pairs)
    throw InvalidInstance("gen_random: num_terminals exceeds possible distinct pairs");

  std::mt19937_64 rng(spec.seed);
  // Explicit arithmetic on raw draws (not std distributions) so the byte
  // stream depends only on mt19937_64, which the standard pins down.
  auto draw_unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto draw_below = [&](std::uint64_t bound) { return bound ? rng() % bound : 0; };

  Graph g(spec.n);
  for (int u = 0; u < spec.n; ++u)
    for (int v = u + 1; v < spec.n; ++v)
      if (draw_unit() < spec.edge_prob) {
        Weight w = spec.weight_min +
                   static_cast<Weight>(draw_below(static_cast<std::uint64_t>(spec.weight_max - spec.weight_min + 1)));
        g.add_edge(u, v, w);
      }
  Connectivity conn = ensure_connected(g, {});

  // Fisher-Yates over all unordered pairs (diagonal included), take a prefix.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(max_pairs));
  for (int u = 0; u < spec.n; ++u)
    for (int v = u; v < spec.n; ++v) pairs.emplace_back(u, v);
  for (size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[draw_below(i)]);
  pairs.resize(spec.num_terminals);
  std::sort(pairs.begin(), pairs.end());

  TmsInstance inst;
  inst.graph = std::move(conn.graph);
  inst.terminals = std::move(pairs);
  inst.k = spec.k;
  inst.validate();
  return inst;
}

}  // namespace tms
