#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace zca::detail {

/// Kahn topological check on an adjacency list; self-loops count as cycles.
inline bool is_acyclic(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> indeg(nodes, 0);
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& [u, v] : edges) {
    if (u == v) return false;
    adj[u].push_back(v);
    ++indeg[v];
  }
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < nodes; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  std::size_t seen = 0;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    ++seen;
    for (std::size_t v : adj[u])
      if (--indeg[v] == 0) stack.push_back(v);
  }
  return seen == nodes;
}

/// Iterative Tarjan; returns a component id per node. Ids are assigned in a
/// deterministic order fixed by node numbering.
inline std::vector<std::size_t> strongly_connected_components(
    std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& [u, v] : edges) adj[u].push_back(v);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(nodes, kUnset), low(nodes, 0), comp(nodes, kUnset);
  std::vector<bool> on_stack(nodes, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, next_comp = 0;

  struct Frame {
    std::size_t node;
    std::size_t edge_pos;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < nodes; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      std::size_t u = f.node;
      if (f.edge_pos == 0) {
        index[u] = low[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      bool descended = false;
      while (f.edge_pos < adj[u].size()) {
        std::size_t v = adj[u][f.edge_pos++];
        if (index[v] == kUnset) {
          call.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v] && index[v] < low[u]) low[u] = index[v];
      }
      if (descended) continue;
      if (low[u] == index[u]) {
        while (true) {
          std::size_t v = stack.back();
          stack.pop_back();
          on_stack[v] = false;
          comp[v] = next_comp;
          if (v == u) break;
        }
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().node;
        if (low[u] < low[parent]) low[parent] = low[u];
      }
    }
  }
  return comp;
}

}  // namespace zca::detail
