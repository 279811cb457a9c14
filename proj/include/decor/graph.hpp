#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace decor {

/// Raised for malformed user input (bad indices, asymmetric matrices, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite simple undirected graph. Edges are stored normalized (i < j),
/// sorted and unique.
class Graph {
 public:
  Graph() = default;
  /// Validates and normalizes the edge list. Self-loops and out-of-range
  /// endpoints throw InputError; duplicate edges collapse.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(std::size_t i, std::size_t j) const;
  std::size_t degree(std::size_t v) const;
  bool connected() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

struct RootedGraph {
  RootedGraph() = default;
  RootedGraph(Graph g, std::size_t root_vertex);

  Graph graph;
  std::size_t root = 0;
};

/// The decoration of `base` by a rooted graph: one copy of the decoration
/// glued at every base vertex. Product vertex (x, u) has index x * n_G + u.
struct DecoratedGraph {
  Graph base;
  RootedGraph decoration;
  Graph product;

  std::size_t index(std::size_t x, std::size_t u) const {
    return x * decoration.graph.vertex_count() + u;
  }
};

DecoratedGraph decorate(const Graph& base, const RootedGraph& decoration);

// Named graphs used by tests, presets and the CLI.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Center 0 joined to `leaves` leaves.
Graph star_graph(std::size_t leaves);

}  // namespace decor
