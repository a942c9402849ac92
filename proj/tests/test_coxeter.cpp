#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "koszul/coxeter.hpp"
#include "oracles.hpp"

using namespace koszul;

TEST(Cartan, RejectsInvalidMatrices) {
  EXPECT_THROW(GeneralizedCartanMatrix(IntMatrix{{2, 1}, {-1, 2}}), InvalidCartanMatrix);
  EXPECT_THROW(GeneralizedCartanMatrix(IntMatrix{{3}}), InvalidCartanMatrix);
  EXPECT_THROW(GeneralizedCartanMatrix(IntMatrix{{2, 0}, {-1, 2}}), InvalidCartanMatrix);
  EXPECT_NO_THROW(GeneralizedCartanMatrix(IntMatrix{{2, -3}, {-1, 2}}));
}

TEST(Realization, MinimalDimensions) {
  EXPECT_EQ(fixtures::realization(fixtures::a2_cartan()).dim_h, 2);
  EXPECT_EQ(fixtures::realization(fixtures::affine_a1_cartan()).dim_h, 3);
  auto re = fixtures::realization(fixtures::b2_cartan());
  auto d = re.dual();
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.cartan, re.cartan.transpose());
  EXPECT_EQ(d.dual(), re);
}

TEST(Realization, RejectsBadPairing) {
  Realization re = fixtures::realization(fixtures::a2_cartan());
  re.roots[0][1] = 0;
  EXPECT_THROW(re.validate(), InvalidCartanMatrix);
}

TEST(WeylGroup, EnumerationCounts) {
  EXPECT_EQ(fixtures::group(fixtures::a1_cartan()).enumerate(1).size(), 2u);
  EXPECT_EQ(fixtures::group(fixtures::a1_cartan()).enumerate(5).size(), 2u);
  auto a2 = fixtures::group(fixtures::a2_cartan());
  EXPECT_EQ(a2.enumerate(3).size(), 6u);
  EXPECT_EQ(a2.enumerate(10).size(), 6u);
  EXPECT_EQ(fixtures::group(fixtures::b2_cartan()).enumerate(10).size(), 8u);
  EXPECT_EQ(fixtures::group(fixtures::a3_cartan()).enumerate(10).size(), 24u);

  auto aff = fixtures::group(fixtures::affine_a1_cartan());
  std::map<int, int> by_len;
  for (auto& w : aff.enumerate(8)) by_len[w.length()]++;
  EXPECT_EQ(by_len[0], 1);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(by_len[n], 2) << n;
}

TEST(WeylGroup, EnumerationMatchesOracleCounts) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan(), fixtures::a3_cartan()}) {
    auto g = fixtures::group(a);
    auto oracle_len = oracle::lengths_by_bfs(a, 6);
    auto elems = g.enumerate(6);
    ASSERT_EQ(elems.size(), oracle_len.size());
    for (auto& w : elems) EXPECT_EQ(oracle_len.at(oracle::word_matrix(a, w.word)), w.length());
  }
}

TEST(WeylGroup, Multiply) {
  auto g = fixtures::group(fixtures::a2_cartan());
  auto s1 = g.generator(0), s2 = g.generator(1);
  for (auto& w : g.enumerate(3)) {
    EXPECT_EQ(g.multiply(w, g.identity()), w);
    EXPECT_EQ(g.multiply(g.identity(), w), w);
    EXPECT_TRUE(g.multiply(w, g.inverse(w)).is_identity());
  }
  EXPECT_TRUE(g.multiply(s1, s1).is_identity());
  auto x = g.multiply(g.multiply(s1, s2), s1);
  EXPECT_EQ(x.length(), 3);
  EXPECT_EQ(x, g.element({1, 0, 1}));
  EXPECT_EQ(x.word, (Word{0, 1, 0}));
}

TEST(WeylGroup, MultiplyLengthRule) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto g = fixtures::group(a);
    auto oracle_len = oracle::lengths_by_bfs(a, 8);
    auto elems = g.enumerate(3);
    for (auto& u : elems)
      for (auto& v : elems) {
        auto uv = g.multiply(u, v);
        Word cat = u.word;
        cat.insert(cat.end(), v.word.begin(), v.word.end());
        int true_len = oracle_len.at(oracle::word_matrix(a, cat));
        EXPECT_EQ(uv.length(), true_len);
        EXPECT_LE(uv.length(), u.length() + v.length());
        // action matrix equals the product of reflection matrices of the canonical word
        EXPECT_EQ(oracle::word_matrix(a, uv.word), oracle::word_matrix(a, cat));
      }
  }
}

TEST(WeylGroup, CanonicalWordIsLexLeast) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::a3_cartan()}) {
    auto g = fixtures::group(a);
    auto oracle_len = oracle::lengths_by_bfs(a, 8);
    // Every word of length l in the alphabet; keep the lex-least reduced one per matrix.
    std::map<oracle::Mat, Word> least;
    int r = static_cast<int>(a.size());
    for (int l = 0; l <= 6; ++l) {
      std::vector<int> idx(l, 0);
      for (;;) {
        auto m = oracle::word_matrix(a, idx);
        if (oracle_len.at(m) == l && !least.count(m)) least[m] = idx;
        int k = l - 1;
        while (k >= 0 && idx[k] == r - 1) idx[k--] = 0;
        if (k < 0) break;
        idx[k]++;
      }
    }
    for (auto& [m, w] : least) EXPECT_EQ(g.element(w).word, w);
  }
}

TEST(WeylGroup, LengthEqualsInversionCount) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto g = fixtures::group(a);
    int r = g.rank();
    // positive real roots as orbit images u(alpha_i)
    std::set<std::vector<long>> roots;
    for (auto& u : g.enumerate(7)) {
      auto m = oracle::word_matrix(a, u.word);
      for (int i = 0; i < r; ++i) {
        std::vector<long> beta(r);
        for (int k = 0; k < r; ++k) beta[k] = m[k][i];
        if (oracle::is_positive(beta)) roots.insert(beta);
      }
    }
    for (auto& w : g.enumerate(6)) {
      auto m = oracle::word_matrix(a, w.word);
      int inv = 0;
      for (auto& beta : roots) {
        std::vector<long> img(r, 0);
        for (int i = 0; i < r; ++i)
          for (int k = 0; k < r; ++k) img[i] += m[i][k] * beta[k];
        if (!oracle::is_positive(img)) ++inv;
      }
      EXPECT_EQ(inv, w.length()) << w.to_string();
    }
  }
}

TEST(WeylGroup, ExchangeCondition) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto g = fixtures::group(a);
    for (auto& w : g.enumerate(5))
      for (int s : g.left_descents(w)) {
        auto sw = g.left_multiply(s, w);
        EXPECT_EQ(sw.length(), w.length() - 1);
        bool found = false;
        for (std::size_t k = 0; k < w.word.size() && !found; ++k) {
          Word del = w.word;
          del.erase(del.begin() + static_cast<long>(k));
          found = g.element(del) == sw;
        }
        EXPECT_TRUE(found) << w.to_string();
      }
  }
}

TEST(Bruhat, Examples) {
  auto g = fixtures::group(fixtures::a2_cartan());
  auto s1 = g.generator(0);
  auto s1s2 = g.element({0, 1}), s2s1 = g.element({1, 0});
  EXPECT_TRUE(g.bruhat_leq(s1, s1s2));
  EXPECT_FALSE(g.bruhat_leq(s1s2, s2s1));
  EXPECT_FALSE(g.bruhat_leq(s2s1, s1s2));
  for (auto& w : g.enumerate(3)) EXPECT_TRUE(g.bruhat_leq(g.identity(), w));
}

TEST(Bruhat, AgreesWithSubwordOracle) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan()}) {
    auto g = fixtures::group(a);
    auto elems = g.enumerate(10);
    for (auto& u : elems)
      for (auto& w : elems) EXPECT_EQ(g.bruhat_leq(u, w), oracle::bruhat_by_subwords(a, u.word, w.word));
  }
  auto a = fixtures::affine_a1_cartan();
  auto g = fixtures::group(a);
  auto elems = g.enumerate(5);
  for (auto& u : elems)
    for (auto& w : elems) EXPECT_EQ(g.bruhat_leq(u, w), oracle::bruhat_by_subwords(a, u.word, w.word));
}

TEST(Bruhat, PartialOrder) {
  for (auto a : {fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto g = fixtures::group(a);
    auto elems = g.enumerate(4);
    for (auto& x : elems)
      for (auto& y : elems) {
        if (g.bruhat_leq(x, y) && g.bruhat_leq(y, x)) EXPECT_EQ(x, y);
        for (auto& z : elems)
          if (g.bruhat_leq(x, y) && g.bruhat_leq(y, z)) EXPECT_TRUE(g.bruhat_leq(x, z));
      }
  }
}

TEST(Parabolic, FiniteTypeDetection) {
  auto aff = fixtures::group(fixtures::affine_a1_cartan());
  EXPECT_TRUE(aff.parabolic({0}).finite_type);
  EXPECT_FALSE(aff.parabolic({0, 1}).finite_type);
  EXPECT_TRUE(fixtures::group(fixtures::b2_cartan()).parabolic({0, 1}).finite_type);
  auto hyp = WeylGroup(Realization::minimal(GeneralizedCartanMatrix(IntMatrix{{2, -3}, {-3, 2}})));
  EXPECT_FALSE(hyp.parabolic({0, 1}).finite_type);
}

TEST(Parabolic, CosetRepresentatives) {
  auto g = fixtures::group(fixtures::a2_cartan());
  auto th = g.parabolic({0});
  auto reps = g.coset_representatives(th, CosetSide::left, CosetKind::minimal, 3);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_EQ(reps[0], g.identity());
  EXPECT_EQ(reps[1], g.element({1}));
  EXPECT_EQ(reps[2], g.element({1, 0}));
  EXPECT_EQ(g.coset_representatives(g.parabolic({}), CosetSide::left, CosetKind::minimal, 3).size(), 6u);

  auto maxr = g.coset_representatives(th, CosetSide::left, CosetKind::maximal, 3);
  ASSERT_EQ(maxr.size(), 3u);
  for (auto& w : maxr) EXPECT_TRUE(g.is_left_descent(w, 0));

  auto aff = fixtures::group(fixtures::affine_a1_cartan());
  EXPECT_THROW(aff.coset_representatives(aff.parabolic({0, 1}), CosetSide::left, CosetKind::maximal, 3), NotFiniteType);
}

TEST(Parabolic, LongestElement) {
  auto g = fixtures::group(fixtures::a2_cartan());
  EXPECT_EQ(g.longest_element(g.parabolic({1})), g.generator(1));
  auto w0 = g.longest_element(g.parabolic({0, 1}));
  EXPECT_EQ(w0.length(), 3);
  EXPECT_EQ(w0, g.element({0, 1, 0}));
  EXPECT_EQ(w0, g.element({1, 0, 1}));
  auto b2 = fixtures::group(fixtures::b2_cartan());
  auto w0b = b2.longest_element(b2.parabolic({0, 1}));
  EXPECT_EQ(w0b.length(), 4);
  for (int s = 0; s < 2; ++s) {
    EXPECT_TRUE(b2.is_left_descent(w0b, s));
    EXPECT_TRUE(b2.is_right_descent(w0b, s));
  }
  auto aff = fixtures::group(fixtures::affine_a1_cartan());
  EXPECT_THROW(aff.longest_element(aff.parabolic({0, 1})), NotFiniteType);
}

TEST(Parabolic, Factorization) {
  auto g = fixtures::group(fixtures::a2_cartan());
  auto th = g.parabolic({0});
  auto [u0, v0] = g.factor_parabolic(g.identity(), th);
  EXPECT_TRUE(u0.is_identity());
  EXPECT_TRUE(v0.is_identity());
  auto [u1, v1] = g.factor_parabolic(g.element({0, 1}), th);
  EXPECT_EQ(u1, g.generator(0));
  EXPECT_EQ(v1, g.generator(1));
  auto [u2, v2] = g.factor_parabolic(g.generator(1), th);
  EXPECT_TRUE(u2.is_identity());
  EXPECT_EQ(v2, g.generator(1));

  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto gg = fixtures::group(a);
    for (int s = 0; s < gg.rank(); ++s) {
      auto t = gg.parabolic({s});
      for (auto& w : gg.enumerate(6)) {
        auto [u, v] = gg.factor_parabolic(w, t);
        EXPECT_EQ(gg.multiply(u, v), w);
        EXPECT_EQ(u.length() + v.length(), w.length());
        EXPECT_TRUE(gg.is_minimal_representative(v, t, CosetSide::left));
      }
    }
  }
}

TEST(WeylGroup, PoincareSeries) {
  auto g = fixtures::group(fixtures::a2_cartan());
  std::map<int, int> c;
  for (auto& w : g.enumerate(10)) c[w.length()]++;
  // (1+v)(1+v+v^2) = 1 + 2v + 2v^2 + v^3
  EXPECT_EQ(c, (std::map<int, int>{{0, 1}, {1, 2}, {2, 2}, {3, 1}}));
}
