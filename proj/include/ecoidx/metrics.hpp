#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ecoidx/community.hpp"
#include "ecoidx/error.hpp"
#include "ecoidx/graph.hpp"

namespace ecoidx {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// Dense hop-count matrix, row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }
  std::uint32_t& at(std::size_t a, std::size_t b) { return d_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> d_;
};

inline void bfs_from(const Graph& g, NodeIndex s, std::vector<std::uint32_t>& dist,
                     std::vector<NodeIndex>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  dist[s] = 0;
  queue.push_back(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeIndex v = queue[head];
    for (NodeIndex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

inline DistanceMatrix all_pairs_distances(const Graph& g) {
  const std::size_t n = g.num_nodes();
  DistanceMatrix out(n);
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeIndex> queue;
  queue.reserve(n);
  for (NodeIndex s = 0; s < n; ++s) {
    bfs_from(g, s, dist, queue);
    for (std::size_t t = 0; t < n; ++t) out.at(s, t) = dist[t];
  }
  return out;
}

// Mean over unordered pairs of 1/d(u,v); unreachable pairs contribute 0.
inline double global_efficiency(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw Error(ErrorCode::TooSmall, "global efficiency needs at least 2 nodes");
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (d(a, b) != kUnreachable) sum += 1.0 / static_cast<double>(d(a, b));
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

inline double global_efficiency(const Graph& g) {
  if (g.num_nodes() < 2) throw Error(ErrorCode::TooSmall, "global efficiency needs at least 2 nodes");
  return global_efficiency(all_pairs_distances(g));
}

namespace detail {

inline std::vector<NodeIndex> checked_largest_component(const Graph& g, const char* what) {
  auto comp = largest_component(g);
  if (comp.size() < 2)
    throw Error(ErrorCode::TooSmall, std::string(what) + " needs a component with at least 2 nodes");
  return comp;
}

}  // namespace detail

// Mean pairwise hop count within the largest connected component.
inline double average_shortest_path(const Graph& g, const DistanceMatrix& d) {
  auto comp = detail::checked_largest_component(g, "average shortest path");
  double sum = 0.0;
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = i + 1; j < comp.size(); ++j) sum += static_cast<double>(d(comp[i], comp[j]));
  const double pairs = static_cast<double>(comp.size()) * static_cast<double>(comp.size() - 1) / 2.0;
  return sum / pairs;
}

inline double average_shortest_path(const Graph& g) {
  return average_shortest_path(g, all_pairs_distances(g));
}

// Mean eccentricity over the largest connected component.
inline double average_eccentricity(const Graph& g, const DistanceMatrix& d) {
  auto comp = detail::checked_largest_component(g, "average eccentricity");
  double sum = 0.0;
  for (NodeIndex a : comp) {
    std::uint32_t ecc = 0;
    for (NodeIndex b : comp) ecc = std::max(ecc, d(a, b));
    sum += ecc;
  }
  return sum / static_cast<double>(comp.size());
}

inline double average_eccentricity(const Graph& g) {
  return average_eccentricity(g, all_pairs_distances(g));
}

// Number of edges among the neighbours of each node.
inline std::vector<std::size_t> neighbor_links(const Graph& g) {
  std::vector<std::size_t> links(g.num_nodes(), 0);
  for (const auto& e : g.edges()) {
    const auto& a = g.neighbors(e.u);
    const auto& b = g.neighbors(e.v);
    // Every common neighbour w closes a triangle (u, v, w); the edge (u,v) is a
    // link among w's neighbours.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else {
        ++links[a[i]];
        ++i;
        ++j;
      }
    }
  }
  return links;
}

// Mean local clustering; nodes with degree < 2 contribute 0.
inline double clustering_avg(const Graph& g) {
  if (g.num_nodes() == 0) return 0.0;
  auto links = neighbor_links(g);
  double sum = 0.0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    const double k = static_cast<double>(g.degree(v));
    if (k < 2) continue;
    sum += static_cast<double>(links[v]) / (k * (k - 1) / 2.0);
  }
  return sum / static_cast<double>(g.num_nodes());
}

// 3 * triangles / connected triples.
inline double transitivity(const Graph& g) {
  auto links = neighbor_links(g);
  double closed = 0.0, triples = 0.0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    const double k = static_cast<double>(g.degree(v));
    closed += static_cast<double>(links[v]);  // each triangle counted once per corner
    triples += k * (k - 1) / 2.0;
  }
  return triples == 0.0 ? 0.0 : closed / triples;
}

// Exact shortest-path betweenness (Brandes accumulation over every source),
// normalized by (n-1)(n-2)/2. Indexed by NodeIndex.
inline std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n < 3) throw Error(ErrorCode::TooSmall, "betweenness needs at least 3 nodes");
  std::vector<double> bc(n, 0.0), sigma(n), delta(n);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeIndex> order;
  order.reserve(n);
  for (NodeIndex s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      NodeIndex v = order[head];
      for (NodeIndex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      NodeIndex w = order[i];
      for (NodeIndex v : g.neighbors(w))
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      bc[w] += delta[w];
    }
  }
  // Each unordered pair was accumulated from both endpoints.
  const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (auto& b : bc) b /= norm;
  return bc;
}

inline double central_point_dominance(const std::vector<double>& bc) {
  if (bc.size() < 3) throw Error(ErrorCode::TooSmall, "central point dominance needs at least 3 nodes");
  const double top = *std::max_element(bc.begin(), bc.end());
  double sum = 0.0;
  for (double b : bc) sum += top - b;
  return sum / static_cast<double>(bc.size() - 1);
}

inline double central_point_dominance(const Graph& g) { return central_point_dominance(betweenness(g)); }

// Fraction of nodes that survive iterative pruning of degree < k.
inline double core_ratio(const Graph& g, std::size_t k = 2) {
  if (k < 1) throw Error(ErrorCode::BadConfig, "core ratio needs k >= 1");
  const std::size_t n = g.num_nodes();
  if (n == 0) return 0.0;
  auto deg = g.degrees();
  std::vector<bool> removed(n, false);
  std::vector<NodeIndex> stack;
  for (NodeIndex v = 0; v < n; ++v)
    if (deg[v] < k) {
      removed[v] = true;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (--deg[w] < k) {
        removed[w] = true;
        stack.push_back(w);
      }
    }
  }
  const auto kept = static_cast<double>(std::count(removed.begin(), removed.end(), false));
  return kept / static_cast<double>(n);
}

struct RichClub {
  std::size_t k = 0;
  std::size_t members = 0;
  double value = 0.0;
};

// Density of the subgraph induced on nodes with degree >= k.
inline RichClub rich_club_at(const Graph& g, std::size_t k) {
  std::vector<bool> in(g.num_nodes(), false);
  std::size_t members = 0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v)
    if (g.degree(v) >= k) {
      in[v] = true;
      ++members;
    }
  if (members < 2)
    throw Error(ErrorCode::DegenerateClub,
                "fewer than 2 nodes with degree >= " + std::to_string(k));
  std::size_t internal = 0;
  for (const auto& e : g.edges())
    if (in[e.u] && in[e.v]) ++internal;
  const double possible = static_cast<double>(members) * static_cast<double>(members - 1) / 2.0;
  return {k, members, static_cast<double>(internal) / possible};
}

// Hub-decile threshold: the smallest k with |{deg >= k}| <= max(2, ceil(n/10)).
// When that threshold leaves a single hub, k drops to the largest value that
// keeps two members (the second-highest degree).
inline std::size_t default_rich_club_k(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw Error(ErrorCode::DegenerateClub, "rich club needs at least 2 nodes");
  auto deg = g.degrees();
  std::sort(deg.begin(), deg.end(), std::greater<>());
  const std::size_t target = std::max<std::size_t>(2, (n + 9) / 10);
  auto count_at_least = [&](std::size_t k) {
    auto end = std::partition_point(deg.begin(), deg.end(), [k](std::size_t d) { return d >= k; });
    return static_cast<std::size_t>(end - deg.begin());
  };
  std::size_t k = 0;
  while (count_at_least(k) > target) ++k;
  if (count_at_least(k) < 2) k = deg[1];
  return k;
}

inline RichClub rich_club(const Graph& g, std::optional<std::size_t> k = std::nullopt) {
  return rich_club_at(g, k ? *k : default_rich_club_k(g));
}

struct DegreeStats {
  double avg_degree = 0.0;
  double density = 0.0;
  double avg_edge_weight = 1.0;
};

inline DegreeStats degree_stats(const Graph& g) {
  const double n = static_cast<double>(g.num_nodes());
  const double m = static_cast<double>(g.num_edges());
  if (g.num_nodes() < 2) throw Error(ErrorCode::TooSmall, "density needs at least 2 nodes");
  DegreeStats s;
  s.avg_degree = 2.0 * m / n;
  s.density = 2.0 * m / (n * (n - 1.0));
  if (g.num_edges() > 0) {
    double w = 0.0;
    for (const auto& e : g.edges()) w += e.weight;
    s.avg_edge_weight = w / m;
  }
  return s;
}

// Survey metadata attached to an observed or simulated collaboration graph.
struct SurveyMeta {
  std::size_t respondents = 0;
  std::size_t max_reportable = 0;
  double avg_collaborations = 0.0;
};

// One value per metric. Optional fields allow bundles replayed from published
// tables, which do not carry every metric.
struct MetricsBundle {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::optional<double> avg_shortest_path;
  std::optional<double> central_point_dominance;
  std::optional<double> clustering;
  std::optional<double> density;
  std::optional<double> global_efficiency;
  std::optional<double> avg_eccentricity;
  std::optional<double> avg_degree;
  std::optional<double> modularity;
  std::optional<double> avg_edge_weight;
  std::optional<double> transitivity;
  std::optional<double> rich_club;
  std::optional<double> core_ratio;
  std::optional<double> avg_collaborations;

  std::optional<std::size_t> rich_club_k;
  bool avg_collaborations_fallback = false;

  friend bool operator==(const MetricsBundle&, const MetricsBundle&) = default;
};

struct BundleOptions {
  std::size_t core_k = 2;
  std::optional<std::size_t> rich_club_k;
};

inline MetricsBundle compute_bundle(const Graph& g, const std::optional<SurveyMeta>& survey = std::nullopt,
                                    const BundleOptions& opts = {}) {
  if (g.num_nodes() < 3) throw Error(ErrorCode::TooSmall, "metrics bundle needs at least 3 nodes");
  MetricsBundle b;
  b.n_nodes = g.num_nodes();
  b.n_edges = g.num_edges();

  const auto dist = all_pairs_distances(g);
  b.global_efficiency = global_efficiency(dist);
  b.avg_shortest_path = average_shortest_path(g, dist);
  b.avg_eccentricity = average_eccentricity(g, dist);
  b.central_point_dominance = central_point_dominance(betweenness(g));
  b.clustering = clustering_avg(g);
  b.transitivity = transitivity(g);

  const auto ds = degree_stats(g);
  b.avg_degree = ds.avg_degree;
  b.density = ds.density;
  b.avg_edge_weight = ds.avg_edge_weight;

  b.modularity = detect_communities(g).q_value;
  b.core_ratio = core_ratio(g, opts.core_k);
  const auto rc = rich_club(g, opts.rich_club_k);
  b.rich_club = rc.value;
  b.rich_club_k = rc.k;

  if (survey) {
    b.avg_collaborations = survey->avg_collaborations;
  } else {
    b.avg_collaborations = ds.avg_degree;
    b.avg_collaborations_fallback = true;
  }
  return b;
}

}  // namespace ecoidx
