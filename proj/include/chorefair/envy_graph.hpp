#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chorefair/allocation.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

/// Directed graph on agents. In the solvers an edge (i, j) means agent i is
/// indifferent between its own bundle and j's: c_i(X_i) = c_i(X_j).
class EnvyGraph {
 public:
  EnvyGraph() = default;
  explicit EnvyGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  int vertex_count() const { return n_; }

  void add_edge(int i, int j) { adj_[index(i, j)] = 1; }
  bool has_edge(int i, int j) const { return adj_[index(i, j)] != 0; }

  /// Edges in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (has_edge(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  friend bool operator==(const EnvyGraph&, const EnvyGraph&) = default;

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
      throw InvalidInput("edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside graph");
    }
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Graph from a cost matrix: costs[i][j] = c_i(X_j).
inline EnvyGraph envy_graph_from_costs(const std::vector<std::vector<Cost>>& costs) {
  const int n = static_cast<int>(costs.size());
  EnvyGraph g(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = costs[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (i != j && row[static_cast<std::size_t>(i)] == row[static_cast<std::size_t>(j)]) g.add_edge(i, j);
    }
  }
  return g;
}

/// Edge (i, j) exactly when c_i(X_i) = c_i(X_j), i != j. Works on partial
/// allocations.
inline EnvyGraph build_envy_graph(const Instance& inst, const Allocation& x) {
  const int n = inst.agent_count();
  std::vector<std::vector<Cost>> costs(static_cast<std::size_t>(n), std::vector<Cost>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) costs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inst.cost(i, x[j]);
  }
  return envy_graph_from_costs(costs);
}

/// Strongly connected components (Tarjan), each sorted ascending, listed in
/// the order Tarjan completes them.
inline std::vector<std::vector<int>> strongly_connected_components(const EnvyGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  // Iterative DFS: frame = (vertex, next neighbour to try).
  std::vector<std::pair<int, int>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto vs = static_cast<std::size_t>(v);
      if (next == 0 && index[vs] == -1) {
        index[vs] = low[vs] = counter++;
        stack.push_back(v);
        on_stack[vs] = 1;
      }
      bool descended = false;
      while (next < n) {
        const int w = next++;
        if (!g.has_edge(v, w)) continue;
        const auto ws = static_cast<std::size_t>(w);
        if (index[ws] == -1) {
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[ws] != 0) low[vs] = std::min(low[vs], index[ws]);
      }
      if (descended) continue;
      if (low[vs] == index[vs]) {
        std::vector<int> comp;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      const int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto parent = static_cast<std::size_t>(frames.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return components;
}

/// A strongly connected component with no edge leaving it. Among all such
/// components, the one containing the lowest-numbered agent. Sorted.
inline std::vector<int> tail_scc(const EnvyGraph& g) {
  const auto components = strongly_connected_components(g);
  std::vector<int> component_of(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  const std::vector<int>* best = nullptr;
  for (std::size_t c = 0; c < components.size(); ++c) {
    bool leaves = false;
    for (int v : components[c]) {
      for (int w = 0; w < g.vertex_count() && !leaves; ++w) {
        leaves = g.has_edge(v, w) && component_of[static_cast<std::size_t>(w)] != static_cast<int>(c);
      }
    }
    if (leaves) continue;
    if (best == nullptr || components[c].front() < best->front()) best = &components[c];
  }
  return best == nullptr ? std::vector<int>{} : *best;
}

/// If edge (i, j) lies on a directed cycle, returns the cycle [i, j, ...]
/// closed by a shortest j -> i path (BFS, neighbours by ascending index).
inline std::optional<std::vector<int>> find_cycle_through_edge(const EnvyGraph& g, int i, int j) {
  if (!g.has_edge(i, j)) {
    throw InvalidInput("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge");
  }
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::deque<int> queue{j};
  parent[static_cast<std::size_t>(j)] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == i) break;
    for (int w = 0; w < n; ++w) {
      if (g.has_edge(v, w) && parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[static_cast<std::size_t>(i)] == -2) return std::nullopt;
  // Path j -> ... -> i, reversed from the parent chain.
  std::vector<int> path;
  for (int v = parent[static_cast<std::size_t>(i)]; v != -1; v = parent[static_cast<std::size_t>(v)]) {
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  std::vector<int> cycle{i};
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

}  // namespace chorefair
