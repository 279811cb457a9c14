#include "decor/graph.hpp"

#include <algorithm>
#include <numeric>

namespace decor {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (n_ == 0) throw InputError("graph must have at least one vertex");
  for (auto& [i, j] : edges) {
    if (i >= n_ || j >= n_) {
      throw InputError("edge {" + std::to_string(i) + "," + std::to_string(j) +
                       "} has an endpoint outside 0.." + std::to_string(n_ - 1));
    }
    if (i == j) throw InputError("self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

std::size_t Graph::degree(std::size_t v) const {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [v](const Edge& e) { return e.first == v || e.second == v; }));
}

bool Graph::connected() const {
  if (n_ == 0) return false;
  // union-find
  std::vector<std::size_t> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n_;
  for (const auto& [i, j] : edges_) {
    auto a = find(i), b = find(j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

RootedGraph::RootedGraph(Graph g, std::size_t root_vertex) : graph(std::move(g)), root(root_vertex) {
  if (root >= graph.vertex_count()) {
    throw InputError("root " + std::to_string(root) + " is not a vertex of a graph with " +
                     std::to_string(graph.vertex_count()) + " vertices");
  }
}

DecoratedGraph decorate(const Graph& base, const RootedGraph& decoration) {
  const std::size_t nb = base.vertex_count();
  const std::size_t nd = decoration.graph.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(base.edge_count() + nb * decoration.graph.edge_count());
  // field edges: copies of the base graph through the roots
  for (const auto& [x, y] : base.edges()) {
    edges.emplace_back(x * nd + decoration.root, y * nd + decoration.root);
  }
  // kite edges: one copy of the decoration per base vertex
  for (std::size_t x = 0; x < nb; ++x) {
    for (const auto& [u, v] : decoration.graph.edges()) edges.emplace_back(x * nd + u, x * nd + v);
  }
  return DecoratedGraph{base, decoration, Graph(nb * nd, std::move(edges))};
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

}  // namespace decor
