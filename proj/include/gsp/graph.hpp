#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/matrix.hpp"

namespace gsp {

using Vertex = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

inline std::string describe(const Edge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " + std::to_string(e.weight) +
         ")";
}

/// A validated weighted undirected graph. Construct through build_graph().
///
/// The edge list is canonical: every edge has u < v and the list is sorted
/// lexicographically by (u, v), so matrix construction is deterministic.
class Graph {
 public:
  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbors of a vertex in ascending order, paired with the edge weight.
  struct Neighbor {
    Vertex vertex;
    double weight;
  };
  const std::vector<Neighbor>& neighbors(Vertex n) const { return adjacency_.at(n); }

  /// Weighted degree, accumulated in ascending neighbor order.
  double degree(Vertex n) const {
    double d = 0.0;
    for (const auto& nb : adjacency_.at(n)) d += nb.weight;
    return d;
  }

  bool is_unweighted() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
  }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adjacency_(n) {
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back({e.v, e.weight});
      adjacency_[e.v].push_back({e.u, e.weight});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    }
  }

  friend Graph build_graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Validates and canonicalizes an edge list. Each rejected edge is named in the error.
inline Graph build_graph(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "graph must have at least one vertex");
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge " + describe(e) + " references a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "edge " + describe(e) + " is a self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonPositiveWeight, "edge " + describe(e) + " has a non-positive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw Error(ErrorCode::DuplicateEdge, "edge " + describe(edges[i]) + " appears more than once");
    }
  }
  return Graph(n, std::move(edges));
}

inline DenseMatrix adjacency(const Graph& g) {
  DenseMatrix a(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

inline DenseMatrix weight_matrix(const Graph& g) {
  DenseMatrix w(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) {
    w(e.u, e.v) = e.weight;
    w(e.v, e.u) = e.weight;
  }
  return w;
}

inline DenseMatrix degree_matrix(const Graph& g) {
  DenseMatrix d(g.vertex_count(), g.vertex_count());
  for (Vertex n = 0; n < g.vertex_count(); ++n) d(n, n) = g.degree(n);
  return d;
}

/// L = D - W, with the diagonal written as the degree directly.
inline DenseMatrix laplacian(const Graph& g) {
  DenseMatrix l(g.vertex_count(), g.vertex_count());
  for (Vertex n = 0; n < g.vertex_count(); ++n) {
    for (const auto& nb : g.neighbors(n)) l(n, nb.vertex) = -nb.weight;
    l(n, n) = g.degree(n);
  }
  return l;
}

/// D⁻¹W. Fails with IsolatedVertex when some degree is zero.
inline DenseMatrix random_walk_matrix(const Graph& g) {
  DenseMatrix p(g.vertex_count(), g.vertex_count());
  for (Vertex n = 0; n < g.vertex_count(); ++n) {
    const double d = g.degree(n);
    if (!(d > 0.0)) {
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(n) + " has no neighbors");
    }
    for (const auto& nb : g.neighbors(n)) p(n, nb.vertex) = nb.weight / d;
  }
  return p;
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Vertex cur = frontier.front();
    frontier.pop();
    for (const auto& nb : g.neighbors(cur)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        ++reached;
        frontier.push(nb.vertex);
      }
    }
  }
  return reached == n;
}

}  // namespace gsp
