#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ecoidx/error.hpp"

namespace ecoidx {

using NodeIndex = std::uint32_t;

struct EdgeEntry {
  std::string source;
  std::string target;
  std::optional<double> weight;
};

struct Edge {
  NodeIndex u;  // u < v
  NodeIndex v;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph.
//
// Node ids are opaque strings kept in lexicographic order; a node's position in
// that order is its NodeIndex, and every algorithm iterates in this canonical
// order. Adjacency lists are sorted. Edges are stored once with u < v.
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool weighted() const noexcept { return weighted_; }

  const std::vector<std::string>& node_ids() const noexcept { return ids_; }
  const std::string& id(NodeIndex v) const { return ids_.at(v); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<NodeIndex>& neighbors(NodeIndex v) const { return adj_[v]; }
  std::size_t degree(NodeIndex v) const { return adj_[v].size(); }

  std::optional<NodeIndex> index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<NodeIndex>(it - ids_.begin());
  }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    const auto& na = adj_[a];
    return std::binary_search(na.begin(), na.end(), b);
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(num_nodes());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] = adj_[v].size();
    return d;
  }

  // Edge list in (source, target, weight) form, canonical order.
  std::vector<EdgeEntry> edge_entries() const {
    std::vector<EdgeEntry> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) {
      std::optional<double> w;
      if (weighted_) w = e.weight;
      out.push_back({ids_[e.u], ids_[e.v], w});
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_ && a.weighted_ == b.weighted_;
  }

 private:
  friend struct GraphBuilder;

  std::vector<std::string> ids_;
  std::vector<std::vector<NodeIndex>> adj_;
  std::vector<Edge> edges_;
  bool weighted_ = false;
};

struct BuildResult {
  Graph graph;
  std::size_t loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

struct GraphBuilder {
  static BuildResult build(const std::vector<EdgeEntry>& pairs,
                           const std::vector<std::string>& declared_nodes) {
    BuildResult result;
    Graph& g = result.graph;

    std::vector<std::string> ids = declared_nodes;
    for (const auto& p : pairs) {
      if (p.source.empty() || p.target.empty())
        throw Error(ErrorCode::InvalidNodeId, "node ids must be non-empty");
      if (p.weight && (!std::isfinite(*p.weight) || *p.weight <= 0.0))
        throw Error(ErrorCode::InvalidWeight,
                    "weight of edge (" + p.source + "," + p.target + ") must be finite and > 0");
      ids.push_back(p.source);
      ids.push_back(p.target);
    }
    for (const auto& id : declared_nodes)
      if (id.empty()) throw Error(ErrorCode::InvalidNodeId, "node ids must be non-empty");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    g.ids_ = std::move(ids);

    std::unordered_map<std::string, NodeIndex> index;
    index.reserve(g.ids_.size());
    for (std::size_t i = 0; i < g.ids_.size(); ++i) index.emplace(g.ids_[i], static_cast<NodeIndex>(i));

    // First weight wins for duplicate pairs.
    std::map<std::pair<NodeIndex, NodeIndex>, double> unique_edges;
    std::size_t valid = 0;
    for (const auto& p : pairs) {
      NodeIndex a = index.at(p.source);
      NodeIndex b = index.at(p.target);
      if (a == b) {
        ++result.loops_dropped;
        continue;
      }
      ++valid;
      if (p.weight) g.weighted_ = true;
      auto key = std::minmax(a, b);
      if (!unique_edges.emplace(key, p.weight.value_or(1.0)).second) ++result.duplicates_merged;
    }
    if (valid == 0 && declared_nodes.empty())
      throw Error(ErrorCode::EmptyInput, "no valid edges and no declared nodes");

    g.adj_.assign(g.ids_.size(), {});
    g.edges_.reserve(unique_edges.size());
    for (const auto& [key, w] : unique_edges) {
      g.edges_.push_back({key.first, key.second, w});
      g.adj_[key.first].push_back(key.second);
      g.adj_[key.second].push_back(key.first);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    return result;
  }
};

// Builds a simple graph: self-loops are dropped, duplicate pairs (either
// orientation) are merged keeping the first weight. Counts are reported.
inline BuildResult from_edge_list(const std::vector<EdgeEntry>& pairs,
                                  const std::vector<std::string>& declared_nodes = {}) {
  return GraphBuilder::build(pairs, declared_nodes);
}

// Convenience for tests and generators: unweighted edges by id.
inline Graph make_graph(const std::vector<std::pair<std::string, std::string>>& pairs,
                        const std::vector<std::string>& declared_nodes = {}) {
  std::vector<EdgeEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& [a, b] : pairs) entries.push_back({a, b, std::nullopt});
  return from_edge_list(entries, declared_nodes).graph;
}

struct ComponentPartition {
  // Each component lists node indices in ascending order; components are
  // ordered by their smallest member.
  std::vector<std::vector<NodeIndex>> components;
};

inline ComponentPartition connected_components(const Graph& g) {
  ComponentPartition out;
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeIndex> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeIndex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeIndex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.components.push_back(std::move(comp));
  }
  return out;
}

// Largest component; ties go to the one containing the smallest node index.
inline std::vector<NodeIndex> largest_component(const Graph& g) {
  auto parts = connected_components(g);
  std::vector<NodeIndex> best;
  for (auto& c : parts.components)
    if (c.size() > best.size()) best = std::move(c);
  return best;
}

inline Graph permute_labels(const Graph& g, const std::map<std::string, std::string>& bijection) {
  std::vector<std::string> image;
  image.reserve(g.num_nodes());
  for (const auto& id : g.node_ids()) {
    auto it = bijection.find(id);
    if (it == bijection.end())
      throw Error(ErrorCode::InvalidBijection, "node '" + id + "' has no image");
    image.push_back(it->second);
  }
  {
    auto sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::InvalidBijection, "mapping is not injective");
  }
  std::vector<EdgeEntry> entries;
  entries.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    std::optional<double> w;
    if (g.weighted()) w = e.weight;
    entries.push_back({image[e.u], image[e.v], w});
  }
  return from_edge_list(entries, image).graph;
}

}  // namespace ecoidx
