#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "koszul/decompose.hpp"

using namespace koszul;

namespace {

RingPtr ring_of(const IntMatrix& a, RingSide side = RingSide::equivariant) {
  return PolyRing::make(fixtures::realization(a), side);
}

std::vector<Word> all_words(int rank, int len) {
  std::vector<Word> out{{}}, layer{{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (auto& w : layer)
      for (int s = 0; s < rank; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// v^l(w) * sum_u h_{u,w}(v^-1) v^l(u): graded right rank of B_w, lowest generator in degree 0.
Laurent predicted_rank(KLTable& t, const WeylElement& w) {
  Laurent r;
  for (auto& [u, c] : t.kl_basis(w).terms) r = r + c.bar().shifted(u.length());
  return r.shifted(w.length());
}

}  // namespace

TEST(Decompose, SquareOfElementarySplitsIntoShiftedCopies) {
  auto r = ring_of(fixtures::a2_cartan());
  SoergelLibrary lib(r);
  auto bs = elementary_bimodule(r, 0);
  auto x = tensor(bs, bs);
  auto d = lib.decompose(x);
  ASSERT_EQ(d.entries.size(), 2u);
  auto s = lib.group().generator(0);
  EXPECT_EQ(d.entries[0].label, s);
  EXPECT_EQ(d.entries[0].shift, -1);
  EXPECT_EQ(d.entries[0].twist_doubled, -1);
  EXPECT_EQ(d.entries[1].label, s);
  EXPECT_EQ(d.entries[1].shift, 1);
  EXPECT_EQ(d.entries[1].twist_doubled, 1);
  ASSERT_EQ(d.idempotents.size(), 2u);
  auto& e1 = d.idempotents[0];
  auto& e2 = d.idempotents[1];
  EXPECT_EQ(e1 * e1, e1);
  EXPECT_EQ(e2 * e2, e2);
  EXPECT_TRUE((e1 * e2).is_zero());
  EXPECT_TRUE((e2 * e1).is_zero());
  EXPECT_EQ(e1 + e2, PolyMatrix::identity(4));
  EXPECT_TRUE(is_bimodule_map(x, x, e1));
  EXPECT_TRUE(is_bimodule_map(x, x, e2));
  KLTable t{HeckeAlgebra(lib.group())};
  auto kl = t.to_kl(HeckeAlgebra(lib.group()).multiply(t.kl_basis(s), t.kl_basis(s)));
  EXPECT_EQ(kl.coeff(s), d.multiplicities().at(s));
}

TEST(Decompose, ElementaryIsIndecomposable) {
  auto r = ring_of(fixtures::b2_cartan());
  SoergelLibrary lib(r);
  auto d = lib.decompose(elementary_bimodule(r, 1));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].label, lib.group().generator(1));
  EXPECT_EQ(d.entries[0].shift, 0);
  EXPECT_EQ(d.entries[0].multiplicity, 1);
}

TEST(Decompose, ReducedPairIsIndecomposable) {
  auto r = ring_of(fixtures::a2_cartan());
  SoergelLibrary lib(r);
  auto d = lib.decompose(bott_samelson(r, {0, 1}));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].label, lib.group().element({0, 1}));
  EXPECT_EQ(d.entries[0].shift, 0);
}

TEST(Decompose, MonodromicSideReportsTwists) {
  auto r = ring_of(fixtures::a1_cartan(), RingSide::monodromic);
  SoergelLibrary lib(r);
  auto bs = elementary_bimodule(r, 0);
  auto d = lib.decompose(tensor(bs, bs));
  ASSERT_EQ(d.entries.size(), 2u);
  for (auto& e : d.entries) EXPECT_EQ(e.shift, 0);
  EXPECT_EQ(d.entries[0].twist_doubled + d.entries[1].twist_doubled, 0);
  EXPECT_EQ(std::abs(d.entries[0].twist_doubled), 1);
}

TEST(Indecomposable, GradedRankMatchesKL) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan(), fixtures::a3_cartan()}) {
    auto r = ring_of(a);
    SoergelLibrary lib(r);
    KLTable t{HeckeAlgebra(lib.group())};
    int bound = a.size() == 3 ? 4 : 4;
    for (auto& w : lib.group().enumerate(bound)) {
      auto b = lib.indecomposable(w);
      EXPECT_EQ(b.graded_rank(), predicted_rank(t, w)) << word_to_string(w.word);
      EXPECT_EQ(hom_in_degree(b, b, 0).size(), 1u);
    }
  }
}

TEST(Indecomposable, NontrivialKLFixture) {
  // in A3, w = s2 s1 s3 s2 has 14 elements below it and P_{e,w} = P_{s2,w} = 1 + q
  auto a = fixtures::a3_cartan();
  auto r = ring_of(a);
  SoergelLibrary lib(r);
  KLTable t{HeckeAlgebra(lib.group())};
  auto w = lib.group().element({1, 0, 2, 1});
  auto b = lib.indecomposable(w);
  EXPECT_EQ(b.graded_rank(), predicted_rank(t, w));
  EXPECT_EQ(b.rank(), 16);
}

TEST(DecomposeWord, MatchesHeckeProducts) {
  for (auto a : {fixtures::a2_cartan(), fixtures::b2_cartan(), fixtures::affine_a1_cartan()}) {
    auto r = ring_of(a);
    SoergelLibrary lib(r);
    HeckeAlgebra h(lib.group());
    KLTable t{h};
    for (auto& w : all_words(2, 5)) {
      auto d = lib.decompose_word(w);
      auto expected = t.to_kl(h.bott_samelson(w));
      std::map<WeylElement, Laurent> want(expected.terms.begin(), expected.terms.end());
      EXPECT_EQ(d.multiplicities(), want) << word_to_string(w);
      for (auto& e : d.entries) {
        EXPECT_EQ(((static_cast<int>(w.size()) - e.label.length() - e.shift) % 2 + 2) % 2, 0);
        EXPECT_EQ(e.twist_doubled, e.shift);
      }
    }
  }
}

TEST(DecomposeWord, AgreesWithDirectSplitting) {
  auto r = ring_of(fixtures::b2_cartan());
  SoergelLibrary lib(r);
  for (auto& w : all_words(2, 3)) {
    auto direct = lib.decompose(bott_samelson(r, w));
    EXPECT_EQ(direct.multiplicities(), lib.decompose_word(w).multiplicities()) << word_to_string(w);
    PolyMatrix sum(1 << w.size(), 1 << w.size());
    for (auto& e : direct.idempotents) sum = sum + e;
    EXPECT_EQ(sum, PolyMatrix::identity(1 << w.size()));
  }
}
