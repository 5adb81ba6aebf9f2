#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ecoidx/evaluation.hpp"

namespace ecoidx {
namespace {

std::vector<RankedValue> series(int n, auto value_of) {
  std::vector<RankedValue> v;
  for (int k = 1; k <= n; ++k) v.push_back({k, value_of(k)});
  return v;
}

std::vector<int> order(const std::vector<RankedValue>& v) {
  std::vector<int> ks;
  for (const auto& r : v) ks.push_back(r.k);
  return ks;
}

TEST(RankValues, Examples) {
  EXPECT_EQ(order(rank_values({{1, 0.2}, {2, 0.5}, {3, 0.1}})), (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(order(rank_values({{3, 1.0}, {1, 1.0}, {2, 1.0}})), (std::vector<int>{1, 2, 3}));
  auto up = series(200, [](int k) { return k * 0.5; });
  EXPECT_EQ(rank_values(up), up);
}

TEST(Effectiveness, Examples) {
  auto inc = effectiveness(series(200, [](int k) { return double(k); }));
  EXPECT_DOUBLE_EQ(inc.auc, 1.0);
  EXPECT_NEAR(inc.spearman, 1.0, 1e-12);
  EXPECT_NEAR(inc.kendall_tau_b, 1.0, 1e-12);

  auto dec = effectiveness(series(200, [](int k) { return -double(k); }));
  EXPECT_DOUBLE_EQ(dec.auc, 0.0);
  EXPECT_NEAR(dec.spearman, -1.0, 1e-12);

  auto flat = effectiveness(series(200, [](int) { return 3.0; }));
  EXPECT_DOUBLE_EQ(flat.auc, 0.5);
  EXPECT_EQ(flat.spearman, 0.0);
}

TEST(Effectiveness, SmallCorpusByHand) {
  // Low half {k1: 0.3, k2: 0.1}, high half {k3: 0.2, k4: 0.3}: wins 0 + 0.5 + 1 + 1.
  auto s = effectiveness({{1, 0.3}, {2, 0.1}, {3, 0.2}, {4, 0.3}}, 4);
  EXPECT_DOUBLE_EQ(s.auc, 2.5 / 4.0);
}

TEST(Effectiveness, NegationAntisymmetry) {
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto v = series(200, [&](int) { return u(eng); });
    auto neg = v;
    for (auto& r : neg) r.value = -r.value;
    EXPECT_NEAR(effectiveness(v).auc + effectiveness(neg).auc, 1.0, 1e-12);
  }
}

TEST(Effectiveness, InputOrderDoesNotMatter) {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto v = series(200, [&](int k) { return k / 400.0 + u(eng); });
  auto base = effectiveness(v);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(v.begin(), v.end(), eng);
    auto s = effectiveness(v);
    EXPECT_EQ(s.auc, base.auc);
    EXPECT_EQ(s.spearman, base.spearman);
    EXPECT_EQ(s.kendall_tau_b, base.kendall_tau_b);
  }
}

TEST(Effectiveness, BadShape) {
  for (auto bad : {series(199, [](int k) { return double(k); }),
                   std::vector<RankedValue>(200, RankedValue{1, 0.0})}) {
    try {
      effectiveness(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadCorpusShape);
    }
  }
}

TEST(Correlations, TiesUseAverageRanks) {
  std::vector<double> a{1, 2, 3, 4}, b{1, 1, 2, 2};
  // Ranks of b: 1.5 1.5 3.5 3.5
  EXPECT_NEAR(spearman(a, b), 0.894427190999916, 1e-12);
  // 4 concordant, 0 discordant, 2 ties in b, n0 = 6
  EXPECT_NEAR(kendall_tau_b(a, b), 4.0 / std::sqrt(6.0 * 4.0), 1e-12);
}

TEST(ReferenceTable, KnownEntries) {
  EXPECT_EQ(reference_effectiveness(FormulaId::C10, Family::NewConnections), 1.0);
  EXPECT_EQ(reference_effectiveness(FormulaId::C5, Family::NewConnections), 0.7);
  EXPECT_FALSE(reference_effectiveness(FormulaId::C10R, Family::Respondents));
}

class SeededCorpora : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    corpora = new CorpusMap;
    for (auto f : kAllFamilies) (*corpora)[f] = generate_corpus(f, 7);
  }
  static void TearDownTestSuite() {
    delete corpora;
    corpora = nullptr;
  }
  static CorpusMap* corpora;
};

CorpusMap* SeededCorpora::corpora = nullptr;

TEST_F(SeededCorpora, SingletonFormula) {
  auto ev = evaluate_corpus(*corpora, {FormulaId::C10});
  EXPECT_EQ(ev.scores.size(), 4u);
  EXPECT_EQ(ev.winner, FormulaId::C10);
  EXPECT_EQ(ev.m, 34u);
  EXPECT_GE(ev.score(FormulaId::C10, Family::NewConnections).auc, 0.9);
}

TEST_F(SeededCorpora, RepeatableAndOrderedByK) {
  auto a = evaluate_corpus(*corpora, {FormulaId::C5, FormulaId::C10}, 24, {Family::NewConnections});
  auto b = evaluate_corpus(*corpora, {FormulaId::C5, FormulaId::C10}, 24, {Family::NewConnections}, 1);
  for (auto id : {FormulaId::C5, FormulaId::C10}) {
    EXPECT_EQ(a.score(id, Family::NewConnections).auc, b.score(id, Family::NewConnections).auc);
    EXPECT_EQ(a.series.at({id, Family::NewConnections}), b.series.at({id, Family::NewConnections}));
    const auto& s = a.series.at({id, Family::NewConnections});
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].k, static_cast<int>(i) + 1);
  }
}

TEST_F(SeededCorpora, MissingFamily) {
  CorpusMap partial;
  partial[Family::NewConnections] = corpora->at(Family::NewConnections);
  try {
    evaluate_corpus(partial, {FormulaId::C10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFamily);
  }
}

}  // namespace
}  // namespace ecoidx
