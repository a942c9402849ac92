#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "koszul/bigraded.hpp"
#include "koszul/bimod.hpp"
#include "koszul/coxeter.hpp"

namespace koszul {

// (d, w) -> (d - w, -w)
inline BigradedDim regrade(const BigradedDim& m) {
  BigradedDim out;
  for (auto& [k, mult] : m.dims()) out.add(k.first - k.second, -k.second, mult);
  return out;
}

// [n]: (d, w) -> (d - n, w)
inline BigradedDim shift(const BigradedDim& m, int n) {
  BigradedDim out;
  for (auto& [k, mult] : m.dims()) out.add(k.first - n, k.second, mult);
  return out;
}

// (k/2): (d, w) -> (d, w - k)
inline BigradedDim twist(const BigradedDim& m, int k_doubled) {
  BigradedDim out;
  for (auto& [k, mult] : m.dims()) out.add(k.first, k.second - k_doubled, mult);
  return out;
}

// Q[n](n/2)
inline BigradedDim tate_piece(int n) { return twist(shift(BigradedDim::singleton(0, 0), n), n); }

// Pairs add in both coordinates.
inline BigradedDim convolve(const BigradedDim& a, const BigradedDim& b) {
  BigradedDim out;
  for (auto& [ka, ma] : a.dims())
    for (auto& [kb, mb] : b.dims()) out.add(ka.first + kb.first, ka.second + kb.second, ma * mb);
  return out;
}

// Graded pieces of Q[T] with T in degree 2 and weight 2, up to T^top.
inline BigradedDim polynomial_truncation(int top) {
  BigradedDim out;
  for (int k = 0; k <= top; ++k) out.add(2 * k, 2 * k);
  return out;
}

// Q[t]/(t^{top+1}) with t in degree 0 and Frobenius acting by q^{-1}.
inline BigradedDim power_series_truncation(int top) {
  BigradedDim out;
  for (int k = 0; k <= top; ++k) out.add(0, -2 * k);
  return out;
}

struct BabyCaseResult {
  BigradedDim image;
  bool involution_holds = false;
  // every piece of the image sits in a degree where the input had a piece of the
  // same total d - w, so nothing is created or lost
  bool support_matches = false;
};

inline BabyCaseResult baby_case_roundtrip(const BigradedDim& m) {
  BabyCaseResult r;
  r.image = regrade(m);
  r.involution_holds = regrade(r.image) == m;
  std::multiset<int> before, after;
  for (auto& [k, mult] : m.dims()) before.insert(k.first - k.second);
  for (auto& [k, mult] : r.image.dims()) after.insert(k.first);
  r.support_matches = before == after && r.image.total() == m.total();
  return r;
}

// Generators of a Hom space as a free right-S module, graded by (degree, weight):
// the bigraded Hilbert series times prod (1 - t^{(2, gw)}) over the variables.
inline BigradedDim bigraded_rank(const GradedHomSpace& h) {
  const PolyRing& ring = h.source->ring_data();
  int gw = ring.generator_weight();
  std::map<std::pair<int, int>, long> series;
  for (auto& [deg, basis] : h.basis)
    for (auto& e : basis) series[{deg, e.weight}] += 1;
  for (int k = 0; k < ring.nvars(); ++k) {
    std::map<std::pair<int, int>, long> next;
    for (auto& [key, c] : series) {
      next[key] += c;
      if (key.first + 2 <= h.degree_bound) next[{key.first + 2, key.second + gw}] -= c;
    }
    series = std::move(next);
  }
  BigradedDim out;
  for (auto& [key, c] : series) {
    if (c == 0) continue;
    if (c < 0) throw DegreeBoundExceeded("bigraded Hilbert series is not that of a free module");
    if (key.first > h.degree_bound - 4) throw DegreeBoundExceeded("Hom generators near the degree bound");
    out.add(key.first, key.second, c);
  }
  return out;
}

// Equivariant side: Ext^i is pure of weight i, so the table is {(d, d)}.
inline BigradedDim equivariant_table(const GradedHomSpace& h) {
  BigradedDim t = bigraded_rank(h);
  for (auto& [k, m] : t.dims())
    if (k.first != k.second)
      throw std::logic_error("weight-degree lock violated on the equivariant side at (" + std::to_string(k.first) +
                             "," + std::to_string(k.second) + ")");
  return t;
}

// Monodromic side: Hom between tilting objects sits in cohomological degree 0;
// the internal polynomial grading is carried by the weight alone.
inline BigradedDim monodromic_table(const GradedHomSpace& h) {
  BigradedDim t = bigraded_rank(h);
  BigradedDim out;
  for (auto& [k, m] : t.dims()) {
    if (k.second != -k.first)
      throw std::logic_error("weight-degree lock violated on the monodromic side at (" + std::to_string(k.first) + "," +
                             std::to_string(k.second) + ")");
    out.add(0, k.second, m);
  }
  return out;
}

// All reduced words of length <= max_length, shortest first, then lexicographic.
inline std::vector<Word> reduced_words(const WeylGroup& g, int max_length) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int l = 1; l <= max_length; ++l) {
    std::vector<Word> next;
    for (auto& w : layer)
      for (int s = 0; s < g.rank(); ++s) {
        Word x = w;
        x.push_back(s);
        if (g.element(x).length() == l) next.push_back(std::move(x));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::vector<std::pair<Word, Word>> all_pairs(const std::vector<Word>& words) {
  std::vector<std::pair<Word, Word>> out;
  for (auto& x : words)
    for (auto& y : words) out.emplace_back(x, y);
  return out;
}

struct EMCheckOptions {
  bool symmetrizable_self = false;
  std::optional<int> degree_bound;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct EMPairResult {
  Word x, y;
  BigradedDim equivariant, regraded, monodromic;
  bool pass = false;
  std::string discrepancy;
};

struct EMReport {
  std::vector<EMPairResult> pairs;
  bool all_pass() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const EMPairResult& p) { return p.pass; });
  }
  int failures() const {
    return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [](const EMPairResult& p) { return !p.pass; }));
  }
};

inline std::string first_discrepancy(const BigradedDim& want, const BigradedDim& got) {
  std::set<BigradedDim::Key> keys;
  for (auto& [k, m] : want.dims()) keys.insert(k);
  for (auto& [k, m] : got.dims()) keys.insert(k);
  for (auto& k : keys)
    if (want.at(k.first, k.second) != got.at(k.first, k.second))
      return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + "): regraded equivariant " +
             std::to_string(want.at(k.first, k.second)) + " vs monodromic " + std::to_string(got.at(k.first, k.second));
  return {};
}

// Monodromic ring paired with the equivariant one: the other side of the dual
// realization, or the same realization when the self flag is set.
inline RingPtr monodromic_partner(const Realization& real, bool symmetrizable_self) {
  if (!symmetrizable_self) return PolyRing::make(real, RingSide::equivariant)->dual_side();
  if (!real.cartan.is_symmetrizable())
    throw std::invalid_argument("the self-dual shortcut needs a symmetrizable Cartan matrix");
  return PolyRing::make(real, RingSide::monodromic);
}

inline EMPairResult em_check_pair(const RingPtr& e, const RingPtr& m, const Word& x, const Word& y,
                                  std::optional<int> bound) {
  EMPairResult r{x, y, {}, {}, {}, false, {}};
  r.equivariant = equivariant_table(hom_graded(bott_samelson(e, x), bott_samelson(e, y), bound, false));
  r.regraded = regrade(r.equivariant);
  r.monodromic = monodromic_table(hom_graded(bott_samelson(m, x), bott_samelson(m, y), bound, false));
  r.pass = r.regraded == r.monodromic;
  if (!r.pass) r.discrepancy = first_discrepancy(r.regraded, r.monodromic);
  return r;
}

inline EMReport em_check(const Realization& real, const std::vector<std::pair<Word, Word>>& pairs,
                         const EMCheckOptions& opt = {}) {
  RingPtr e = PolyRing::make(real, RingSide::equivariant);
  RingPtr m = monodromic_partner(real, opt.symmetrizable_self);
  EMReport report;
  report.pairs.resize(pairs.size());
  unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(pairs.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < pairs.size(); i = next++)
        report.pairs[i] = em_check_pair(e, m, pairs[i].first, pairs[i].second, opt.degree_bound);
    } catch (...) {
      errors[id] = std::current_exception();
      next = pairs.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work, t);
  if (n) work(0);
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return report;
}

}  // namespace koszul
