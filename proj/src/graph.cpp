#include "tms/graph.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <string>

#include "tms/errors.hpp"

namespace tms {

void Graph::add_edge(int u, int v, Weight w) {
  const int n = vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw InvalidInstance("edge endpoint out of range: " + std::to_string(u) + "," + std::to_string(v));
  if (u == v) throw InvalidInstance("self-loop at vertex " + std::to_string(u));
  if (w <= 0) throw InvalidInstance("nonpositive edge weight " + std::to_string(w));
  if (has_edge(u, v))
    throw InvalidInstance("parallel edge " + std::to_string(u) + "," + std::to_string(v));
  auto insert = [](std::vector<std::pair<int, Weight>>& lst, int to, Weight ww) {
    auto it = std::lower_bound(lst.begin(), lst.end(), std::make_pair(to, Weight{0}));
    lst.insert(it, {to, ww});
  };
  insert(adj_[u], v, w);
  insert(adj_[v], u, w);
  ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
  const auto& lst = adj_[u];
  auto it = std::lower_bound(lst.begin(), lst.end(), std::make_pair(v, Weight{0}));
  return it != lst.end() && it->first == v;
}

Weight Graph::edge_weight(int u, int v) const {
  const auto& lst = adj_[u];
  auto it = std::lower_bound(lst.begin(), lst.end(), std::make_pair(v, Weight{0}));
  if (it == lst.end() || it->first != v)
    throw InvalidInstance("no edge " + std::to_string(u) + "," + std::to_string(v));
  return it->second;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u)
    for (const auto& [v, w] : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::unit_weights() const {
  for (int u = 0; u < vertex_count(); ++u)
    for (const auto& [v, w] : adj_[u])
      if (w != 1) return false;
  return true;
}

std::vector<int> Graph::component_ids() const {
  const int n = vertex_count();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : adj_[u])
        if (comp[v] == -1) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  return comp;
}

DistanceRow shortest_distances(const Graph& g, int source) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n) throw InvalidInstance("source out of range");
  DistanceRow row;
  row.source = source;
  row.dist.assign(n, kUnreachable);
  using Item = std::pair<Weight, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  row.dist[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != row.dist[u]) continue;
    for (const auto& [v, w] : g.neighbors(u)) {
      Weight nd = d + w;
      if (row.dist[v] == kUnreachable || nd < row.dist[v]) {
        row.dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return row;
}

ElementSet sp_set(const Graph& g, int u, int v) {
  DistanceRow from_u = shortest_distances(g, u);
  if (!from_u.reachable(v)) throw InvalidInstance("sp_set endpoints are disconnected");
  DistanceRow from_v = shortest_distances(g, v);
  const Weight duv = from_u.dist[v];
  ElementSet out;
  for (int x = 0; x < g.vertex_count(); ++x)
    if (from_u.reachable(x) && from_v.reachable(x) && from_u.dist[x] + from_v.dist[x] == duv)
      out.push_back(x);
  return out;  // ascending by construction
}

AllPairs::AllPairs(const Graph& g) {
  rows_.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) rows_.push_back(shortest_distances(g, v));
}

ElementSet AllPairs::sp(int u, int v) const {
  const Weight duv = dist(u, v);
  if (duv == kUnreachable) throw InvalidInstance("sp endpoints are disconnected");
  ElementSet out;
  const int n = static_cast<int>(rows_.size());
  for (int x = 0; x < n; ++x)
    if (reachable(u, x) && reachable(v, x) && dist(u, x) + dist(x, v) == duv) out.push_back(x);
  return out;
}

Connectivity ensure_connected(const Graph& g, const std::vector<std::pair<int, int>>& terminals) {
  std::vector<int> comp = g.component_ids();
  for (const auto& [u, v] : terminals)
    if (comp[u] != comp[v])
      throw InfeasibleError("terminal pair " + std::to_string(u) + "," + std::to_string(v) +
                            " spans two components");
  int num_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  if (num_comp <= 1) return {g, std::nullopt};
  Connectivity out{g, std::nullopt};
  int hub = out.graph.add_vertex();
  out.hub = hub;
  std::vector<char> seen(num_comp, 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!seen[comp[v]]) {  // lowest-id vertex of each component
      seen[comp[v]] = 1;
      out.graph.add_edge(hub, v, 1);
    }
  return out;
}

bool is_vertex_cover(const Graph& g, const std::vector<int>& c) {
  std::vector<char> in(g.vertex_count(), 0);
  for (int v : c) in[v] = 1;
  for (const auto& [u, v] : g.edges())
    if (!in[u] && !in[v]) return false;
  return true;
}

bool is_cluster_deletion_set(const Graph& g, const std::vector<int>& m) {
  std::vector<char> deleted(g.vertex_count(), 0);
  for (int v : m) deleted[v] = 1;
  // Every component of G - m must be a clique: check each surviving vertex is
  // adjacent to all other vertices of its component.
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  std::vector<std::vector<int>> members;
  for (int s = 0; s < n; ++s) {
    if (deleted[s] || comp[s] != -1) continue;
    int id = static_cast<int>(members.size());
    members.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members[id].push_back(u);
      for (const auto& [v, w] : g.neighbors(u))
        if (!deleted[v] && comp[v] == -1) {
          comp[v] = id;
          stack.push_back(v);
        }
    }
  }
  for (const auto& cl : members)
    for (size_t i = 0; i < cl.size(); ++i)
      for (size_t j = i + 1; j < cl.size(); ++j)
        if (!g.has_edge(cl[i], cl[j])) return false;
  return true;
}

namespace {

// Branch on a lexicographically-first uncovered edge: one endpoint must join the cover.
bool vc_branch(const Graph& g, std::vector<char>& in, int budget, std::vector<int>& chosen) {
  int eu = -1, ev = -1;
  for (int u = 0; u < g.vertex_count() && eu == -1; ++u) {
    if (in[u]) continue;
    for (const auto& [v, w] : g.neighbors(u))
      if (!in[v] && u < v) {
        eu = u;
        ev = v;
        break;
      }
  }
  if (eu == -1) return true;
  if (budget == 0) return false;
  for (int pick : {eu, ev}) {
    in[pick] = 1;
    chosen.push_back(pick);
    if (vc_branch(g, in, budget - 1, chosen)) return true;
    chosen.pop_back();
    in[pick] = 0;
  }
  return false;
}

// Find an induced P3 (a, b, c with ab, bc edges, ac non-edge); one of the
// three must be deleted for G - m to become a cluster graph.
bool find_p3(const Graph& g, const std::vector<char>& del, int& a, int& b, int& c) {
  for (b = 0; b < g.vertex_count(); ++b) {
    if (del[b]) continue;
    const auto& nb = g.neighbors(b);
    for (size_t i = 0; i < nb.size(); ++i) {
      if (del[nb[i].first]) continue;
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (del[nb[j].first]) continue;
        if (!g.has_edge(nb[i].first, nb[j].first)) {
          a = nb[i].first;
          c = nb[j].first;
          return true;
        }
      }
    }
  }
  return false;
}

bool cd_branch(const Graph& g, std::vector<char>& del, int budget, std::vector<int>& chosen) {
  int a, b, c;
  if (!find_p3(g, del, a, b, c)) return true;
  if (budget == 0) return false;
  for (int pick : {a, b, c}) {
    del[pick] = 1;
    chosen.push_back(pick);
    if (cd_branch(g, del, budget - 1, chosen)) return true;
    chosen.pop_back();
    del[pick] = 0;
  }
  return false;
}

}  // namespace

ParameterWitness compute_parameter(const Graph& g, ParameterKind kind, int branch_cap) {
  ParameterWitness w;
  w.kind = kind;
  const int n = g.vertex_count();
  switch (kind) {
    case ParameterKind::VertexCover: {
      for (int k = 0; k <= branch_cap; ++k) {
        std::vector<char> in(n, 0);
        std::vector<int> chosen;
        if (vc_branch(g, in, k, chosen)) {
          w.value = static_cast<int>(chosen.size());
          std::sort(chosen.begin(), chosen.end());
          w.vertices = chosen;
          return w;
        }
      }
      throw CapExceeded("vertex cover exceeds branch cap " + std::to_string(branch_cap));
    }
    case ParameterKind::ClusterDeletion: {
      for (int k = 0; k <= branch_cap; ++k) {
        std::vector<char> del(n, 0);
        std::vector<int> chosen;
        if (cd_branch(g, del, k, chosen)) {
          w.value = static_cast<int>(chosen.size());
          std::sort(chosen.begin(), chosen.end());
          w.vertices = chosen;
          return w;
        }
      }
      throw CapExceeded("cluster deletion set exceeds branch cap " + std::to_string(branch_cap));
    }
    case ParameterKind::FeedbackEdge: {
      // Edges outside a BFS spanning forest.
      std::vector<int> parent(n, -2);
      std::vector<std::pair<int, int>> tree;
      for (int s = 0; s < n; ++s) {
        if (parent[s] != -2) continue;
        parent[s] = -1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
          int u = q.front();
          q.pop();
          for (const auto& [v, wt] : g.neighbors(u))
            if (parent[v] == -2) {
              parent[v] = u;
              tree.emplace_back(std::min(u, v), std::max(u, v));
              q.push(v);
            }
        }
      }
      std::sort(tree.begin(), tree.end());
      for (const auto& e : g.edges())
        if (!std::binary_search(tree.begin(), tree.end(), e)) w.edge_witness.push_back(e);
      w.value = static_cast<int>(w.edge_witness.size());
      return w;
    }
    case ParameterKind::NdPartition: {
      // Same-type relation: N(u) \ {v} == N(v) \ {u}. It is an equivalence;
      // classes are built by linear scan against existing representatives.
      auto same_type = [&](int u, int v) {
        ElementSet nu, nv;
        for (const auto& [x, wt] : g.neighbors(u))
          if (x != v) nu.push_back(x);
        for (const auto& [x, wt] : g.neighbors(v))
          if (x != u) nv.push_back(x);
        return nu == nv;
      };
      for (int v = 0; v < n; ++v) {
        bool placed = false;
        for (auto& cls : w.partition)
          if (same_type(cls[0], v)) {
            cls.push_back(v);
            placed = true;
            break;
          }
        if (!placed) w.partition.push_back({v});
      }
      w.value = static_cast<int>(w.partition.size());
      return w;
    }
  }
  throw InternalError("unknown parameter kind");
}

bool ParameterWitness::validate(const Graph& g) const {
  switch (kind) {
    case ParameterKind::VertexCover:
      return static_cast<int>(vertices.size()) == value && is_vertex_cover(g, vertices);
    case ParameterKind::ClusterDeletion:
      return static_cast<int>(vertices.size()) == value && is_cluster_deletion_set(g, vertices);
    case ParameterKind::FeedbackEdge: {
      if (static_cast<int>(edge_witness.size()) != value) return false;
      // Removing the witness must leave an acyclic graph with the same components.
      Graph h(g.vertex_count());
      auto listed = edge_witness;
      std::sort(listed.begin(), listed.end());
      for (const auto& e : g.edges())
        if (!std::binary_search(listed.begin(), listed.end(), e)) h.add_edge(e.first, e.second);
      int components = 0;
      {
        auto comp = h.component_ids();
        components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
      }
      return h.edge_count() == h.vertex_count() - components;  // forest
    }
    case ParameterKind::NdPartition: {
      std::vector<char> seen(g.vertex_count(), 0);
      for (const auto& cls : partition) {
        if (cls.empty()) return false;
        for (int v : cls) {
          if (v < 0 || v >= g.vertex_count() || seen[v]) return false;
          seen[v] = 1;
        }
        for (size_t i = 0; i < cls.size(); ++i)
          for (size_t j = i + 1; j < cls.size(); ++j) {
            ElementSet nu, nv;
            for (const auto& [x, wt] : g.neighbors(cls[i]))
              if (x != cls[j]) nu.push_back(x);
            for (const auto& [x, wt] : g.neighbors(cls[j]))
              if (x != cls[i]) nv.push_back(x);
            if (nu != nv) return false;
          }
      }
      for (char s : seen)
        if (!s) return false;
      return static_cast<int>(partition.size()) == value;
    }
  }
  return false;
}

}  // namespace tms
