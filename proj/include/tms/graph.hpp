#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tms/util.hpp"

namespace tms {

using Weight = long long;

// Undirected graph with positive integer edge weights. No self-loops, no
// parallel edges. Vertices are 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }

  int add_vertex() {
    adj_.emplace_back();
    return vertex_count() - 1;
  }

  void add_edge(int u, int v, Weight w = 1);  // throws InvalidInstance on violation
  bool has_edge(int u, int v) const;
  Weight edge_weight(int u, int v) const;  // throws InvalidInstance if absent

  // Neighbors as (vertex, weight), sorted by vertex id.
  const std::vector<std::pair<int, Weight>>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

  bool unit_weights() const;

  // component_ids()[v] = id of v's connected component; ids are 0-based and
  // assigned in order of smallest contained vertex.
  std::vector<int> component_ids() const;

 private:
  std::vector<std::vector<std::pair<int, Weight>>> adj_;
  int edge_count_ = 0;
};

inline constexpr Weight kUnreachable = -1;

// Single-source shortest path distances; dist[v] == kUnreachable when v is in
// another component.
struct DistanceRow {
  int source = -1;
  std::vector<Weight> dist;
  bool reachable(int v) const { return dist[v] != kUnreachable; }
};

DistanceRow shortest_distances(const Graph& g, int source);

// All vertices on at least one shortest u-v path:
// { x : d(u,x) + d(x,v) = d(u,v) }. Sorted. Throws InvalidInstance when u and
// v are disconnected. sp_set(g, v, v) = {v}.
ElementSet sp_set(const Graph& g, int u, int v);

// Cached all-pairs distances (one Dijkstra per source).
class AllPairs {
 public:
  explicit AllPairs(const Graph& g);
  Weight dist(int u, int v) const { return rows_[u].dist[v]; }
  bool reachable(int u, int v) const { return dist(u, v) != kUnreachable; }
  ElementSet sp(int u, int v) const;  // same contract as sp_set
  const DistanceRow& row(int v) const { return rows_[v]; }

 private:
  std::vector<DistanceRow> rows_;
};

// ensure_connected: if some terminal pair spans two components, throws
// InfeasibleError. If the graph is connected it is returned unchanged
// (hub == nullopt). Otherwise a hub vertex is appended and joined by one
// unit-weight edge to the lowest-id vertex of every component.
struct Connectivity {
  Graph graph;
  std::optional<int> hub;
};

Connectivity ensure_connected(const Graph& g, const std::vector<std::pair<int, int>>& terminals);

enum class ParameterKind { VertexCover, ClusterDeletion, FeedbackEdge, NdPartition };

// Witness for a structural parameter:
//  VertexCover     value = minimum cover size,    vertices = a minimum cover
//  ClusterDeletion value = minimum deletion size, vertices = a minimum deletion set
//  FeedbackEdge    value = #edges off a spanning forest, edges = those edges
//  NdPartition     value = #classes, partition = the classes (same-type
//                  relation N(u) \ {v} == N(v) \ {u}; unique coarsest)
struct ParameterWitness {
  ParameterKind kind;
  int value = 0;
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edge_witness;
  std::vector<std::vector<int>> partition;

  bool validate(const Graph& g) const;
};

// Exact computation. VertexCover and ClusterDeletion branch with depth at most
// branch_cap and throw CapExceeded when the minimum would exceed it.
ParameterWitness compute_parameter(const Graph& g, ParameterKind kind, int branch_cap = 16);

// True iff deleting m from g leaves a disjoint union of cliques.
bool is_cluster_deletion_set(const Graph& g, const std::vector<int>& m);

// True iff c covers every edge of g.
bool is_vertex_cover(const Graph& g, const std::vector<int>& c);

}  // namespace tms
