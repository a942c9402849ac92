#pragma once

// Brute-force reference implementations used only by the tests. They avoid the
// library's normal forms and recursions on purpose.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "koszul/coxeter.hpp"

namespace oracle {

using Mat = std::vector<std::vector<long>>;

inline Mat identity(int r) {
  Mat m(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  int r = static_cast<int>(a.size());
  Mat c(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Geometric representation on the root lattice: s_i(alpha_j) = alpha_j - a_ij alpha_i.
inline Mat reflection(const koszul::IntMatrix& a, int i) {
  int r = static_cast<int>(a.size());
  Mat m = identity(r);
  for (int j = 0; j < r; ++j) m[i][j] -= a[i][j];
  return m;
}

inline Mat word_matrix(const koszul::IntMatrix& a, const koszul::Word& w) {
  Mat m = identity(static_cast<int>(a.size()));
  for (int s : w) m = mul(m, reflection(a, s));
  return m;
}

// All matrices obtained from subwords of w.
inline std::set<Mat> subword_products(const koszul::IntMatrix& a, const koszul::Word& w) {
  std::set<Mat> out;
  std::size_t n = w.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    koszul::Word sub;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) sub.push_back(w[k]);
    out.insert(word_matrix(a, sub));
  }
  return out;
}

inline bool bruhat_by_subwords(const koszul::IntMatrix& a, const koszul::Word& u_reduced, const koszul::Word& w_reduced) {
  return subword_products(a, w_reduced).count(word_matrix(a, u_reduced)) > 0;
}

// Reduced words by breadth-first search over matrices: returns matrix -> length.
inline std::map<Mat, int> lengths_by_bfs(const koszul::IntMatrix& a, int bound) {
  int r = static_cast<int>(a.size());
  std::map<Mat, int> len{{identity(r), 0}};
  std::vector<Mat> layer{identity(r)};
  for (int l = 1; l <= bound; ++l) {
    std::vector<Mat> next;
    for (auto& m : layer)
      for (int s = 0; s < r; ++s) {
        Mat x = mul(m, reflection(a, s));
        if (!len.count(x)) {
          len[x] = l;
          next.push_back(x);
        }
      }
    layer = std::move(next);
  }
  return len;
}

// Some reduced word of m, found by walking down the BFS length table.
inline koszul::Word reduced_word_of(const koszul::IntMatrix& a, Mat m, const std::map<Mat, int>& len) {
  koszul::Word w;
  int r = static_cast<int>(a.size());
  while (len.at(m) > 0) {
    for (int s = 0; s < r; ++s) {
      Mat x = mul(m, reflection(a, s));
      auto it = len.find(x);
      if (it != len.end() && it->second < len.at(m)) {
        w.insert(w.begin(), s);
        m = x;
        break;
      }
    }
  }
  return w;
}

inline bool bruhat_by_subwords_m(const koszul::IntMatrix& a, const Mat& u, const Mat& w, const std::map<Mat, int>& len) {
  return subword_products(a, reduced_word_of(a, w, len)).count(u) > 0;
}

inline bool is_positive(const std::vector<long>& v) {
  bool any = false;
  for (long x : v) {
    if (x < 0) return false;
    if (x > 0) any = true;
  }
  return any;
}

}  // namespace oracle
