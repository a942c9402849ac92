#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column

// Incremental row echelon form over Q. Rows are reduced against existing pivots
// as they arrive, so memory stays proportional to the rank.
class SparseEchelon {
 public:
  explicit SparseEchelon(int ncols) : ncols_(ncols) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }

  // Returns true if the row increased the rank.
  bool add_row(SparseRow row) {
    normalize(row);
    while (!row.empty()) {
      int lead = row.front().first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        Rational inv = 1 / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      Rational f = row.front().second;
      row = axpy(row, it->second, f);
    }
    return false;
  }

  // Basis of {x : A x = 0}, each vector dense of length ncols.
  std::vector<RationalVector> nullspace() const {
    std::vector<RationalVector> out;
    for (int f = 0; f < ncols_; ++f) {
      if (pivots_.count(f)) continue;
      RationalVector x(ncols_);
      x[f] = 1;
      for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        Rational s = 0;
        for (auto& [c, v] : it->second)
          if (c != it->first && !is_zero(x[c])) s += v * x[c];
        x[it->first] = -s;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  const std::map<int, SparseRow>& pivots() const { return pivots_; }

 private:
  static void normalize(SparseRow& row) {
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [c, v] : row) {
      if (!out.empty() && out.back().first == c)
        out.back().second += v;
      else
        out.emplace_back(c, v);
      if (is_zero(out.back().second)) out.pop_back();
    }
    row.swap(out);
  }
  // row - f * piv
  static SparseRow axpy(const SparseRow& row, const SparseRow& piv, const Rational& f) {
    SparseRow out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.emplace_back(piv[j].first, -f * piv[j].second);
        ++j;
      } else {
        Rational v = row[i].second - f * piv[j].second;
        if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  int ncols_;
  std::map<int, SparseRow> pivots_;
};

namespace detail {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}
inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

inline std::optional<std::uint64_t> reduce(const Rational& q) {
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return std::nullopt;
  return mulmod(n, invmod(d));
}

// Smallest a/b with a = b x mod p, |a|, b below sqrt(p/2).
inline std::optional<Rational> reconstruct(std::uint64_t x) {
  if (x == 0) return Rational(0);
  const long double bound = 1.0e9;
  __int128 r0 = kPrime, r1 = x, t0 = 0, t1 = 1;
  while (static_cast<long double>(r1) > bound) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  __int128 den = t1 < 0 ? -t1 : t1;
  if (den == 0 || static_cast<long double>(den) > bound) return std::nullopt;
  long num = static_cast<long>(t1 < 0 ? -r1 : r1);
  Rational q(num, static_cast<long>(den));
  q.canonicalize();
  return q;
}

}  // namespace detail

// Nullspace of a sparse system: reduced echelon form modulo a 61-bit prime,
// rational reconstruction of the kernel basis, then exact verification over Q.
// Falls back to exact elimination when reconstruction or verification fails.
inline std::vector<RationalVector> sparse_nullspace(const std::vector<SparseRow>& rows, int ncols) {
  using detail::kPrime;
  auto exact = [&] {
    SparseEchelon ech(ncols);
    for (auto& r : rows) ech.add_row(r);
    return ech.nullspace();
  };
  using ModRow = std::vector<std::pair<int, std::uint64_t>>;
  std::map<int, ModRow> piv;
  for (auto& r : rows) {
    std::map<int, std::uint64_t> acc;
    for (auto& [c, v] : r) {
      auto m = detail::reduce(v);
      if (!m) return exact();
      acc[c] = detail::addmod(acc[c], *m);
    }
    ModRow row;
    for (auto& [c, v] : acc)
      if (v) row.emplace_back(c, v);
    while (!row.empty()) {
      auto it = piv.find(row.front().first);
      if (it == piv.end()) {
        std::uint64_t inv = detail::invmod(row.front().second);
        for (auto& e : row) e.second = detail::mulmod(e.second, inv);
        piv.emplace(row.front().first, std::move(row));
        break;
      }
      std::uint64_t f = row.front().second;
      const ModRow& pr = it->second;
      ModRow out;
      out.reserve(row.size() + pr.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j == pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
          out.push_back(row[i++]);
        } else if (i == row.size() || pr[j].first < row[i].first) {
          out.emplace_back(pr[j].first, detail::submod(0, detail::mulmod(f, pr[j].second)));
          ++j;
        } else {
          std::uint64_t v = detail::submod(row[i].second, detail::mulmod(f, pr[j].second));
          if (v) out.emplace_back(row[i].first, v);
          ++i, ++j;
        }
      }
      row.swap(out);
    }
  }
  // back substitution to reduced form, bottom pivot first
  std::vector<std::uint64_t> dense(ncols);
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    std::fill(dense.begin(), dense.end(), 0);
    for (auto& [c, v] : it->second) dense[c] = v;
    for (auto& [c, v] : it->second) {
      if (c == it->first || !dense[c]) continue;
      auto pj = piv.find(c);
      if (pj == piv.end()) continue;
      std::uint64_t f = dense[c];
      for (auto& [c2, v2] : pj->second) dense[c2] = detail::submod(dense[c2], detail::mulmod(f, v2));
    }
    ModRow red;
    for (int c = it->first; c < ncols; ++c)
      if (dense[c]) red.emplace_back(c, dense[c]);
    it->second.swap(red);
  }
  std::vector<RationalVector> out;
  std::vector<int> slot(ncols, -1);
  for (int f = 0; f < ncols; ++f) {
    if (piv.count(f)) continue;
    slot[f] = static_cast<int>(out.size());
    out.emplace_back(ncols);
    out.back()[f] = 1;
  }
  for (auto& [pc, row] : piv)
    for (auto& [c, v] : row) {
      if (c == pc) continue;
      auto q = detail::reconstruct(detail::submod(0, v));
      if (!q) return exact();
      out[slot[c]][pc] = *q;
    }
  for (auto& r : rows)
    for (auto& x : out) {
      Rational s = 0;
      for (auto& [c, v] : r)
        if (!is_zero(x[c])) s += v * x[c];
      if (!is_zero(s)) return exact();
    }
  return out;
}

// Dense helpers for small matrices.
namespace dense {

inline RationalMatrix zeros(int r, int c) { return RationalMatrix(r, RationalVector(c)); }

inline RationalMatrix identity(int n) {
  auto m = zeros(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  int r = static_cast<int>(a.size());
  int k = r ? static_cast<int>(a[0].size()) : 0;
  int c = b.empty() ? 0 : static_cast<int>(b[0].size());
  auto m = zeros(r, c);
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (int j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
    }
  return m;
}

struct Echelon {
  RationalMatrix reduced;
  std::vector<int> pivot_cols;
};

inline Echelon rref(RationalMatrix m) {
  Echelon e;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline int rank(const RationalMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

inline Rational determinant(RationalMatrix m) {
  int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m[i][c])) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) { std::swap(m[p], m[c]); det = -det; }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      Rational f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  int n = static_cast<int>(m.size());
  auto aug = zeros(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto e = rref(std::move(aug));
  if (static_cast<int>(e.pivot_cols.size()) < n || e.pivot_cols[n - 1] >= n)
    throw std::domain_error("matrix is singular");
  auto inv = zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = e.reduced[i][n + j];
  return inv;
}

inline std::vector<RationalVector> nullspace(const RationalMatrix& m, int cols) {
  auto e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(cols);
    x[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = -e.reduced[r][f];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace dense
}  // namespace koszul
