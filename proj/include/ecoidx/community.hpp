#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ecoidx/error.hpp"
#include "ecoidx/graph.hpp"

namespace ecoidx {

struct CommunityPartition {
  std::map<std::string, std::size_t> assignment;
  double q_value = 0.0;

  std::size_t num_communities() const {
    std::size_t k = 0;
    for (const auto& [id, c] : assignment) k = std::max(k, c + 1);
    return k;
  }
};

namespace detail {

inline std::vector<std::size_t> community_vector(const Graph& g, const CommunityPartition& p) {
  std::vector<std::size_t> comm(g.num_nodes());
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    auto it = p.assignment.find(g.id(v));
    if (it == p.assignment.end())
      throw Error(ErrorCode::UnassignedNode, "node '" + g.id(v) + "' has no community");
    comm[v] = it->second;
  }
  return comm;
}

inline double modularity_from_vector(const Graph& g, const std::vector<std::size_t>& comm) {
  const double m = static_cast<double>(g.num_edges());
  if (m == 0.0) throw Error(ErrorCode::NoEdges, "modularity is undefined without edges");
  std::size_t k = 0;
  for (auto c : comm) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), degree(k, 0.0);
  for (const auto& e : g.edges())
    if (comm[e.u] == comm[e.v]) internal[comm[e.u]] += 1.0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) degree[comm[v]] += static_cast<double>(g.degree(v));
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double frac = degree[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

// Relabels communities 0..k-1 by their smallest member.
inline CommunityPartition make_partition(const Graph& g, const std::vector<std::size_t>& raw) {
  std::vector<std::size_t> relabel(g.num_nodes() + 1, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> comm(raw.size());
  std::size_t next = 0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (relabel[raw[v]] == std::numeric_limits<std::size_t>::max()) relabel[raw[v]] = next++;
    comm[v] = relabel[raw[v]];
  }
  CommunityPartition p;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) p.assignment.emplace(g.id(v), comm[v]);
  p.q_value = modularity_from_vector(g, comm);
  return p;
}

}  // namespace detail

// Q = sum_c [ e_c/m - (d_c/2m)^2 ].
inline double modularity_of(const Graph& g, const CommunityPartition& p) {
  return detail::modularity_from_vector(g, detail::community_vector(g, p));
}

// Greedy agglomerative modularity maximization.
//
// Starts from singletons and repeatedly merges the adjacent pair with the
// largest modularity gain. Gains are compared exactly as integers,
// 2m*l_ij - d_i*d_j, so ties are real ties; they resolve to the smallest
// (i, j) where a community's index is its smallest node index. Stops when no
// merge has a strictly positive gain.
inline CommunityPartition detect_communities(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const std::int64_t m = static_cast<std::int64_t>(g.num_edges());
  if (m == 0) throw Error(ErrorCode::NoEdges, "community detection needs at least one edge");

  std::vector<std::int64_t> deg(n);
  std::vector<std::map<std::size_t, std::int64_t>> links(n);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> owner(n);
  for (NodeIndex v = 0; v < n; ++v) {
    owner[v] = v;
    deg[v] = static_cast<std::int64_t>(g.degree(v));
  }
  for (const auto& e : g.edges()) {
    links[e.u][e.v] += 1;
    links[e.v][e.u] += 1;
  }

  while (true) {
    std::int64_t best = 0;
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (auto it = links[i].upper_bound(i); it != links[i].end(); ++it) {
        const std::size_t j = it->first;
        const std::int64_t gain = 2 * m * it->second - deg[i] * deg[j];
        if (gain > best) {
          best = gain;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n) break;

    // Fold bj into bi.
    for (const auto& [k, w] : links[bj]) {
      if (k == bi) continue;
      links[bi][k] += w;
      auto& back = links[k];
      back.erase(bj);
      back[bi] += w;
    }
    links[bi].erase(bj);
    links[bj].clear();
    deg[bi] += deg[bj];
    active[bj] = false;
    for (auto& o : owner)
      if (o == bj) o = bi;
  }
  return detail::make_partition(g, owner);
}

// Exhaustive modularity maximum over all set partitions (n <= 10).
inline CommunityPartition exhaustive_communities(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (g.num_edges() == 0) throw Error(ErrorCode::NoEdges, "modularity is undefined without edges");
  if (n > 10) throw Error(ErrorCode::BadConfig, "exhaustive search is limited to 10 nodes");

  // Restricted growth strings enumerate each set partition once.
  std::vector<std::size_t> rgs(n, 0), maxes(n, 0), best_rgs(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    const double q = detail::modularity_from_vector(g, rgs);
    if (q > best + 1e-15) {
      best = q;
      best_rgs = rgs;
    }
    std::size_t i = n;
    while (i > 1) {
      --i;
      if (rgs[i] <= maxes[i - 1]) break;
      if (i == 1) {
        i = 0;
        break;
      }
    }
    if (n <= 1 || i == 0) break;
    ++rgs[i];
    maxes[i] = std::max(maxes[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxes[j] = maxes[i];
    }
  }
  return detail::make_partition(g, best_rgs);
}

}  // namespace ecoidx
