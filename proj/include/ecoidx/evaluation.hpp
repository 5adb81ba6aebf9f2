#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecoidx/error.hpp"
#include "ecoidx/formulas.hpp"
#include "ecoidx/metrics.hpp"
#include "ecoidx/parallel.hpp"
#include "ecoidx/synthgen.hpp"

namespace ecoidx {

struct RankedValue {
  int k = 0;
  double value = 0.0;

  friend bool operator==(const RankedValue&, const RankedValue&) = default;
};

// Ascending by value; equal values keep ascending k.
inline std::vector<RankedValue> rank_values(std::vector<RankedValue> values) {
  std::sort(values.begin(), values.end(), [](const RankedValue& a, const RankedValue& b) {
    return a.value < b.value || (a.value == b.value && a.k < b.k);
  });
  return values;
}

// Bundles for every graph of a corpus, in corpus order.
inline std::vector<MetricsBundle> corpus_bundles(const std::vector<SyntheticGraph>& corpus, unsigned threads = 0) {
  std::vector<MetricsBundle> out(corpus.size());
  parallel_for(
      corpus.size(),
      [&](std::size_t i) {
        try {
          out[i] = compute_bundle(corpus[i].graph, corpus[i].survey);
        } catch (const Error& e) {
          throw Error(e.code(), "graph k=" + std::to_string(corpus[i].provenance.k) + ": " + e.what());
        }
      },
      threads);
  return out;
}

inline std::vector<RankedValue> formula_values(const std::vector<SyntheticGraph>& corpus,
                                               const std::vector<MetricsBundle>& bundles, FormulaId id,
                                               std::size_t m) {
  std::vector<RankedValue> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      out.push_back({corpus[i].provenance.k, evaluate(id, {bundles[i], m}).value});
    } catch (const Error& e) {
      throw Error(e.code(), "graph k=" + std::to_string(corpus[i].provenance.k) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<RankedValue> rank_by_formula(const std::vector<SyntheticGraph>& corpus, FormulaId id,
                                                std::size_t m) {
  if (m < 1) throw Error(ErrorCode::BadConfig, "m must be >= 1");
  return rank_values(formula_values(corpus, corpus_bundles(corpus), id, m));
}

struct EffectivenessScore {
  FormulaId formula = FormulaId::C0;
  Family family = Family::NewConnections;
  double auc = 0.5;
  double kendall_tau_b = 0.0;
  double spearman = 0.0;
};

namespace detail {

// Average ranks (1-based), ties share the mean rank.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace detail

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return detail::pearson(detail::average_ranks(a), detail::average_ranks(b));
}

// Kendall tau-b; 0 when either side is constant.
inline double kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  double concordant = 0.0, discordant = 0.0, ties_a = 0.0, ties_b = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      pairs += 1.0;
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0) ties_a += 1.0;
      if (db == 0.0) ties_b += 1.0;
      if (da == 0.0 || db == 0.0) continue;
      if ((da > 0.0) == (db > 0.0)) concordant += 1.0;
      else discordant += 1.0;
    }
  }
  const double denom = std::sqrt((pairs - ties_a) * (pairs - ties_b));
  return denom == 0.0 ? 0.0 : (concordant - discordant) / denom;
}

// Half-vs-half AUC plus rank correlations between k and value. `values` must
// hold k = 1..corpus_size exactly once, in any order; the low half is
// k <= corpus_size/2.
inline EffectivenessScore effectiveness(const std::vector<RankedValue>& values, int corpus_size = kCorpusSize) {
  if (corpus_size < 2 || corpus_size % 2 != 0 || values.size() != static_cast<std::size_t>(corpus_size))
    throw Error(ErrorCode::BadCorpusShape, "expected " + std::to_string(corpus_size) + " entries, got " +
                                               std::to_string(values.size()));
  std::vector<double> by_k(static_cast<std::size_t>(corpus_size));
  std::vector<bool> seen(static_cast<std::size_t>(corpus_size), false);
  for (const auto& rv : values) {
    if (rv.k < 1 || rv.k > corpus_size || seen[rv.k - 1])
      throw Error(ErrorCode::BadCorpusShape, "k values must cover 1.." + std::to_string(corpus_size) + " once");
    seen[rv.k - 1] = true;
    by_k[rv.k - 1] = rv.value;
  }
  const int half = corpus_size / 2;
  double wins = 0.0;
  for (int a = 0; a < half; ++a) {
    for (int b = half; b < corpus_size; ++b) {
      if (by_k[b] > by_k[a]) wins += 1.0;
      else if (by_k[b] == by_k[a]) wins += 0.5;
    }
  }
  std::vector<double> ks(static_cast<std::size_t>(corpus_size));
  for (int i = 0; i < corpus_size; ++i) ks[i] = i + 1;

  EffectivenessScore s;
  s.auc = wins / (static_cast<double>(half) * static_cast<double>(half));
  s.kendall_tau_b = kendall_tau_b(ks, by_k);
  s.spearman = spearman(ks, by_k);
  return s;
}

// Published effectiveness table (formula x family), kept as a reference
// target. Its index is computed differently from the AUC used here.
inline std::optional<double> reference_effectiveness(FormulaId id, Family family) {
  static constexpr double table[15][4] = {
      {0.975, 0.8, 0.375, 0.55},  {0.975, 0.375, 0.325, 0.875}, {1, 0.325, 0.3, 0.825},
      {1, 0.4, 0.35, 0.575},      {1, 0.275, 0.4, 0.675},       {0.7, 0.525, 0.375, 0.925},
      {1, 0.375, 0.25, 0.9},      {0.95, 0.85, 0.325, 0.675},   {0.95, 0.85, 0.35, 0.625},
      {1, 0.8, 0.35, 0.8},        {1, 0.825, 0.325, 0.875},     {1, 0.85, 0.325, 0.8},
      {1, 0.8, 0.3, 0.8},         {1, 0.8, 0.3, 0.8},           {1, 0.825, 0.325, 0.825}};
  if (id == FormulaId::C10R) return std::nullopt;
  return table[static_cast<std::size_t>(id)][static_cast<std::size_t>(family)];
}

struct CorpusEvaluation {
  std::vector<FormulaId> formulas;
  std::vector<Family> families;
  std::size_t m = 0;
  std::map<std::pair<FormulaId, Family>, EffectivenessScore> scores;
  // Formula values in k order, per (formula, family).
  std::map<std::pair<FormulaId, Family>, std::vector<RankedValue>> series;
  std::map<FormulaId, double> mean_auc;
  FormulaId winner = FormulaId::C0;

  const EffectivenessScore& score(FormulaId id, Family f) const { return scores.at({id, f}); }
};

using CorpusMap = std::map<Family, std::vector<SyntheticGraph>>;

// Largest max_reportable over all graphs: the m used when none is given.
inline std::size_t corpus_max_reportable(const CorpusMap& corpora) {
  std::size_t m = 0;
  for (const auto& [f, corpus] : corpora)
    for (const auto& g : corpus) m = std::max(m, g.survey.max_reportable);
  return m;
}

// Scores each formula on each family and declares the winner by mean AUC
// (first listed formula on ties). Bundles are computed once per graph.
inline CorpusEvaluation evaluate_corpus(const CorpusMap& corpora, const std::vector<FormulaId>& formulas,
                                        std::optional<std::size_t> m = std::nullopt,
                                        std::vector<Family> families = {kAllFamilies.begin(), kAllFamilies.end()},
                                        unsigned threads = 0) {
  if (formulas.empty()) throw Error(ErrorCode::BadConfig, "no formulas requested");
  if (families.empty()) throw Error(ErrorCode::BadConfig, "no families requested");
  for (auto f : families)
    if (!corpora.count(f) || corpora.at(f).empty())
      throw Error(ErrorCode::MissingFamily, "corpus for family '" + std::string(to_string(f)) + "' is missing");

  CorpusEvaluation ev;
  ev.formulas = formulas;
  ev.families = families;
  ev.m = m ? *m : corpus_max_reportable(corpora);
  if (ev.m < 1) throw Error(ErrorCode::BadConfig, "m must be >= 1");

  for (auto f : families) {
    const auto& corpus = corpora.at(f);
    const auto bundles = corpus_bundles(corpus, threads);
    for (auto id : formulas) {
      auto values = formula_values(corpus, bundles, id, ev.m);
      std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
      auto s = effectiveness(values, static_cast<int>(corpus.size()));
      s.formula = id;
      s.family = f;
      ev.scores[{id, f}] = s;
      ev.series[{id, f}] = std::move(values);
    }
  }
  double best = -1.0;
  for (auto id : formulas) {
    double sum = 0.0;
    for (auto f : families) sum += ev.scores.at({id, f}).auc;
    const double mean = sum / static_cast<double>(families.size());
    ev.mean_auc[id] = mean;
    if (mean > best) {
      best = mean;
      ev.winner = id;
    }
  }
  return ev;
}

}  // namespace ecoidx
