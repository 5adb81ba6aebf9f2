#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library's algorithms: distances come from Floyd-Warshall,
// betweenness from explicit simple-path enumeration, triangles from triple
// enumeration and modularity maxima from a recursive set-partition search.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ecoidx/graph.hpp"

namespace ecoidx::oracle {

using Matrix = std::vector<std::vector<int>>;
inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline Matrix adjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  Matrix a(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

inline Matrix floyd_warshall(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline double efficiency(const Matrix& d) {
  const std::size_t n = d.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] < kInf) s += 1.0 / d[i][j];
  return s / (static_cast<double>(n) * (n - 1));
}

// Largest reachability class; ties go to the class holding the smallest index.
inline std::vector<std::size_t> largest_class(const Matrix& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> best;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = 0; j < n; ++j)
      if (d[i][j] < kInf) {
        cls.push_back(j);
        done[j] = true;
      }
    if (cls.size() > best.size()) best = cls;
  }
  return best;
}

inline double avg_path(const Matrix& d) {
  auto cls = largest_class(d);
  double s = 0.0;
  for (auto i : cls)
    for (auto j : cls)
      if (i != j) s += d[i][j];
  return s / (static_cast<double>(cls.size()) * (cls.size() - 1));
}

inline double avg_eccentricity(const Matrix& d) {
  auto cls = largest_class(d);
  double s = 0.0;
  for (auto i : cls) {
    int e = 0;
    for (auto j : cls) e = std::max(e, d[i][j]);
    s += e;
  }
  return s / static_cast<double>(cls.size());
}

inline double transitivity(const Matrix& a) {
  const std::size_t n = a.size();
  double triangles = 0.0, triples = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (a[i][j] && a[j][k] && a[i][k]) triangles += 1.0;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (i != v && j != v && a[v][i] && a[v][j]) triples += 1.0;
  return triples == 0.0 ? 0.0 : 3.0 * triangles / triples;
}

inline double clustering(const Matrix& a) {
  const std::size_t n = a.size();
  double s = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t i = 0; i < n; ++i)
      if (a[v][i]) nb.push_back(i);
    if (nb.size() < 2) continue;
    double links = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) links += a[nb[i]][nb[j]];
    s += links / (nb.size() * (nb.size() - 1) / 2.0);
  }
  return s / static_cast<double>(n);
}

// Normalized betweenness by enumerating every simple path between each pair
// and keeping the shortest ones.
inline std::vector<double> betweenness(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      std::vector<std::vector<std::size_t>> shortest;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::vector<std::size_t> path{s};
      std::vector<bool> on(n, false);
      on[s] = true;
      std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (path.size() > best) return;
        if (v == t) {
          if (path.size() < best) {
            best = path.size();
            shortest.clear();
          }
          shortest.push_back(path);
          return;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (!a[v][w] || on[w]) continue;
          on[w] = true;
          path.push_back(w);
          dfs(w);
          path.pop_back();
          on[w] = false;
        }
      };
      dfs(s);
      if (shortest.empty()) continue;
      for (const auto& p : shortest)
        for (std::size_t i = 1; i + 1 < p.size(); ++i) bc[p[i]] += 1.0 / static_cast<double>(shortest.size());
    }
  }
  const double norm = (n - 1.0) * (n - 2.0) / 2.0;
  for (auto& b : bc) b /= norm;
  return bc;
}

inline double cpd(const std::vector<double>& bc) {
  const double top = *std::max_element(bc.begin(), bc.end());
  double s = 0.0;
  for (double b : bc) s += top - b;
  return s / (bc.size() - 1.0);
}

// Q = 1/(2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)
inline double modularity(const Matrix& a, const std::vector<int>& comm) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_m += a[i][j];
    }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (comm[i] == comm[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

inline double max_modularity(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<int> comm(n, 0);
  double best = -1.0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      best = std::max(best, modularity(a, comm));
      return;
    }
    for (int c = 0; c <= used; ++c) {
      comm[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

// Size of the largest vertex subset whose induced minimum degree is >= k,
// divided by n (the k-core is the unique maximal such subset).
inline double core_ratio(const Matrix& a, int k) {
  const std::size_t n = a.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (!(mask >> v & 1u)) continue;
      int d = 0;
      for (std::size_t w = 0; w < n; ++w)
        if ((mask >> w & 1u) && a[v][w]) ++d;
      ok = d >= k;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

inline std::string node_label(std::size_t i) { return "v" + std::to_string(i); }

// Random simple graph on n nodes with edge probability p; every node is
// declared, so isolated nodes are kept.
template <class Engine>
Graph random_graph(std::size_t n, double p, Engine& eng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(node_label(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(eng)) edges.emplace_back(nodes[i], nodes[j]);
  return make_graph(edges, nodes);
}

// Random connected graph: a random spanning tree plus extra edges.
template <class Engine>
Graph random_connected_graph(std::size_t n, double extra_p, Engine& eng) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.emplace_back(nodes[i], nodes[pick(eng)]);
  }
  std::bernoulli_distribution coin(extra_p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(eng)) edges.emplace_back(nodes[i], nodes[j]);
  return make_graph(edges, nodes);
}

// One representative per isomorphism class of simple graphs on 4 nodes.
inline std::vector<Graph> four_node_graphs() {
  constexpr std::array<std::pair<int, int>, 6> slots = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  auto canonical = [&](unsigned mask) {
    std::array<int, 4> perm = {0, 1, 2, 3};
    unsigned best = 64;
    do {
      unsigned image = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!(mask >> s & 1u)) continue;
        int a = perm[slots[s].first], b = perm[slots[s].second];
        if (a > b) std::swap(a, b);
        for (std::size_t t = 0; t < slots.size(); ++t)
          if (slots[t].first == a && slots[t].second == b) image |= 1u << t;
      }
      best = std::min(best, image);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };
  std::set<unsigned> classes;
  for (unsigned mask = 0; mask < 64; ++mask) classes.insert(canonical(mask));
  std::vector<Graph> out;
  const std::vector<std::string> nodes = {"a", "b", "c", "d"};
  for (unsigned mask : classes) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1u) edges.emplace_back(nodes[slots[s].first], nodes[slots[s].second]);
    out.push_back(make_graph(edges, nodes));
  }
  return out;
}

}  // namespace ecoidx::oracle
