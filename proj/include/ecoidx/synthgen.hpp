#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ecoidx/error.hpp"
#include "ecoidx/graph.hpp"
#include "ecoidx/metrics.hpp"
#include "ecoidx/parallel.hpp"
#include "ecoidx/rng.hpp"

namespace ecoidx {

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

// Parameters of one simulated snowball survey.
struct GeneratorConfig {
  double prob_new = 0.55;           // a reported collaboration names a brand-new organization
  IntRange connections{15, 24};     // collaborations reported per respondent
  std::int64_t respondent_cap = 35;
  double prob_resp = 0.40;          // a brand-new organization is surveyed in turn
  double nonresp_prob = 0.25;
  IntRange nonresp_edges{1, 6};
  std::optional<IntRange> size_bounds = IntRange{120, 400};
  std::uint64_t seed = 0;
  std::size_t max_attempts = 50;
  std::size_t duplicate_retries = 10;
  // Halt the survey once the node count reaches size_bounds->hi.
  bool stop_at_size_cap = true;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

enum class Family { NewConnections, NumResponses, RespondentRange, Respondents };

inline constexpr std::array<Family, 4> kAllFamilies = {Family::NewConnections, Family::NumResponses,
                                                       Family::RespondentRange, Family::Respondents};

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::NewConnections: return "new-connections";
    case Family::NumResponses: return "num-responses";
    case Family::RespondentRange: return "respondent-range";
    case Family::Respondents: return "respondents";
  }
  return "";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (auto f : kAllFamilies)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

inline constexpr int kCorpusSize = 200;

struct SweepFamily {
  Family family = Family::NewConnections;
  int k = 100;
};

struct SweepOptions {
  // Use the respondent-probability base exactly as printed (0.04) instead of 0.40.
  bool literal_resp_base = false;
};

namespace detail {

inline double clamp_probability(double p) { return std::clamp(p, 0.01, 0.99); }

inline std::int64_t round_half_away(double x) { return static_cast<std::int64_t>(std::lround(x)); }

}  // namespace detail

// Generator parameters for graph k of a sweep. The varied parameter follows its
// piecewise-linear schedule (both pieces share one expression in k - 100); the
// other three stay at their k = 100 values.
inline GeneratorConfig sweep_params(SweepFamily sf, const SweepOptions& opts = {}) {
  if (sf.k < 1 || sf.k > kCorpusSize)
    throw Error(ErrorCode::BadK, "k must be in [1, 200], got " + std::to_string(sf.k));
  const double offset = static_cast<double>(sf.k - 100);
  const double resp_base = opts.literal_resp_base ? 0.04 : 0.40;

  GeneratorConfig cfg;
  cfg.prob_new = 0.55;
  cfg.connections = {15, 24};
  cfg.respondent_cap = 35;
  cfg.prob_resp = detail::clamp_probability(resp_base);
  switch (sf.family) {
    case Family::NewConnections:
      cfg.prob_new = 0.55 - offset / 400.0;
      break;
    case Family::NumResponses:
      cfg.connections = {detail::round_half_away(15.0 + offset / 10.0),
                         detail::round_half_away(24.0 + offset / 10.0)};
      break;
    case Family::RespondentRange:
      cfg.respondent_cap = detail::round_half_away(35.0 + offset / 4.0);
      break;
    case Family::Respondents:
      cfg.prob_resp = resp_base + offset / 400.0;
      break;
  }
  cfg.prob_new = detail::clamp_probability(cfg.prob_new);
  cfg.prob_resp = detail::clamp_probability(cfg.prob_resp);
  return cfg;
}

struct Provenance {
  std::optional<Family> family;
  int k = 0;
  std::uint64_t seed = 0;      // seed requested for the graph
  std::size_t attempts = 0;    // simulations run until the size bounds held
};

struct SyntheticGraph {
  Graph graph;
  SurveyMeta survey;
  Provenance provenance;
  GeneratorConfig config;
};

namespace detail {

inline void validate(const GeneratorConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); };
  if (!(cfg.prob_new >= 0.0 && cfg.prob_new <= 1.0)) bad("prob_new must be in [0,1]");
  if (!(cfg.prob_resp >= 0.0 && cfg.prob_resp <= 1.0)) bad("prob_resp must be in [0,1]");
  if (!(cfg.nonresp_prob >= 0.0 && cfg.nonresp_prob <= 1.0)) bad("nonresp_prob must be in [0,1]");
  if (cfg.connections.lo < 0 || cfg.connections.lo > cfg.connections.hi) bad("invalid connections range");
  if (cfg.nonresp_edges.lo < 0 || cfg.nonresp_edges.lo > cfg.nonresp_edges.hi) bad("invalid nonresp_edges range");
  if (cfg.respondent_cap < 1) bad("respondent_cap must be >= 1");
  if (cfg.size_bounds && (cfg.size_bounds->lo > cfg.size_bounds->hi || cfg.size_bounds->hi < 1))
    bad("invalid size bounds");
  if (cfg.max_attempts < 1) bad("max_attempts must be >= 1");
}

inline std::string node_name(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "n%04zu", i);
  return buf;
}

struct Simulation {
  std::size_t nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::size_t respondents = 0;
  std::int64_t reported = 0;
};

inline Simulation simulate(const GeneratorConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  Simulation sim;
  std::unordered_set<std::uint64_t> present;
  auto key = [](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  auto add_edge = [&](std::uint32_t a, std::uint32_t b) {
    present.insert(key(a, b));
    sim.edges.emplace_back(a, b);
  };
  // Links x to a uniformly drawn existing node; loops and duplicates are
  // redrawn a bounded number of times, then the link is skipped.
  auto attach_existing = [&](std::uint32_t x) {
    for (std::size_t t = 0; t < cfg.duplicate_retries; ++t) {
      auto u = static_cast<std::uint32_t>(rng.between(0, sim.nodes - 1));
      if (u != x && !present.count(key(x, u))) {
        add_edge(x, u);
        return;
      }
    }
  };

  const std::size_t node_cap = (cfg.size_bounds && cfg.stop_at_size_cap)
                                   ? static_cast<std::size_t>(cfg.size_bounds->hi)
                                   : static_cast<std::size_t>(-1);
  std::deque<std::uint32_t> queue{0};
  sim.nodes = 1;
  std::int64_t enrolled = 1;

  while (!queue.empty() && sim.nodes < node_cap) {
    const std::uint32_t r = queue.front();
    queue.pop_front();
    const auto c = static_cast<std::int64_t>(rng.between(cfg.connections.lo, cfg.connections.hi));
    sim.reported += c;
    ++sim.respondents;
    for (std::int64_t i = 0; i < c && sim.nodes < node_cap; ++i) {
      if (rng.bernoulli(cfg.prob_new)) {
        const auto v = static_cast<std::uint32_t>(sim.nodes++);
        add_edge(r, v);
        if (enrolled < cfg.respondent_cap && rng.bernoulli(cfg.prob_resp)) {
          ++enrolled;
          queue.push_back(v);
        } else if (rng.bernoulli(cfg.nonresp_prob)) {
          const auto extra = rng.between(cfg.nonresp_edges.lo, cfg.nonresp_edges.hi);
          for (std::uint64_t j = 0; j < extra; ++j) attach_existing(v);
        }
      } else {
        attach_existing(r);
      }
    }
  }
  return sim;
}

}  // namespace detail

// Simulates a snowball survey. One seed respondent starts a FIFO queue; each
// respondent reports a uniform number of collaborations, each naming a new
// organization with probability prob_new or an existing one otherwise. New
// organizations are surveyed with probability prob_resp while the respondent
// cap allows; the others, once at creation, add 1..6 links to existing nodes
// with probability nonresp_prob. Runs whose node count falls outside
// size_bounds are repeated with derived seeds.
inline SyntheticGraph generate_graph(const GeneratorConfig& cfg) {
  detail::validate(cfg);
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, attempt);
    auto sim = detail::simulate(cfg, seed);
    if (cfg.size_bounds && !cfg.size_bounds->contains(static_cast<std::int64_t>(sim.nodes))) continue;

    std::vector<std::string> names(sim.nodes);
    for (std::size_t i = 0; i < sim.nodes; ++i) names[i] = detail::node_name(i);
    std::vector<EdgeEntry> entries;
    entries.reserve(sim.edges.size());
    for (auto [a, b] : sim.edges) entries.push_back({names[a], names[b], std::nullopt});

    SyntheticGraph out;
    out.graph = from_edge_list(entries, names).graph;
    out.survey.respondents = sim.respondents;
    out.survey.max_reportable = static_cast<std::size_t>(cfg.connections.hi);
    out.survey.avg_collaborations =
        static_cast<double>(sim.reported) / static_cast<double>(sim.respondents);
    out.provenance.seed = cfg.seed;
    out.provenance.attempts = attempt + 1;
    out.config = cfg;
    return out;
  }
  throw Error(ErrorCode::RetryExhausted, "no graph within size bounds after " +
                                             std::to_string(cfg.max_attempts) + " attempts");
}

inline std::uint64_t corpus_graph_seed(std::uint64_t master_seed, Family family, int k) {
  return derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(family) + 1),
                     static_cast<std::uint64_t>(k));
}

inline SyntheticGraph generate_sweep_graph(Family family, int k, std::uint64_t master_seed,
                                           const SweepOptions& opts = {}) {
  auto cfg = sweep_params({family, k}, opts);
  cfg.seed = corpus_graph_seed(master_seed, family, k);
  try {
    auto g = generate_graph(cfg);
    g.provenance.family = family;
    g.provenance.k = k;
    return g;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RetryExhausted) throw;
    throw Error(ErrorCode::RetryExhausted,
                std::string(to_string(family)) + " k=" + std::to_string(k) + ": " + e.what());
  }
}

// The 200 graphs of one sweep family, indexed k = 1..200 at positions 0..199.
inline std::vector<SyntheticGraph> generate_corpus(Family family, std::uint64_t master_seed,
                                                   const SweepOptions& opts = {}, unsigned threads = 0) {
  std::vector<SyntheticGraph> out(kCorpusSize);
  parallel_for(
      out.size(),
      [&](std::size_t i) { out[i] = generate_sweep_graph(family, static_cast<int>(i) + 1, master_seed, opts); },
      threads);
  return out;
}

}  // namespace ecoidx
