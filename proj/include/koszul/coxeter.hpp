#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

struct InvalidCartanMatrix : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotFiniteType : std::domain_error {
  using std::domain_error::domain_error;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Word = std::vector<int>;

inline std::int64_t checked_add64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("root coordinate overflow");
  return r;
}
inline std::int64_t checked_mul64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("root coordinate overflow");
  return r;
}

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto x : m[i]) r[i].emplace_back(static_cast<long>(x));
  return r;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  return os.str();
}

class GeneralizedCartanMatrix {
 public:
  GeneralizedCartanMatrix() = default;
  explicit GeneralizedCartanMatrix(IntMatrix entries) : a_(std::move(entries)) { validate(); }

  int rank() const { return static_cast<int>(a_.size()); }
  std::int64_t operator()(int i, int j) const { return a_[i][j]; }
  const IntMatrix& entries() const { return a_; }

  void validate() const {
    int n = rank();
    if (n == 0) throw InvalidCartanMatrix("Cartan matrix must have positive rank");
    for (auto& row : a_)
      if (static_cast<int>(row.size()) != n) throw InvalidCartanMatrix("Cartan matrix must be square");
    for (int i = 0; i < n; ++i) {
      if (a_[i][i] != 2) throw InvalidCartanMatrix("diagonal entry a[" + std::to_string(i) + "][" + std::to_string(i) + "] != 2");
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (a_[i][j] > 0)
          throw InvalidCartanMatrix("positive off-diagonal entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if ((a_[i][j] == 0) != (a_[j][i] == 0))
          throw InvalidCartanMatrix("zero pattern not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }

  GeneralizedCartanMatrix transpose() const {
    IntMatrix t(rank(), std::vector<std::int64_t>(rank()));
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) t[j][i] = a_[i][j];
    return GeneralizedCartanMatrix(std::move(t));
  }

  GeneralizedCartanMatrix restrict_to(const std::vector<int>& idx) const {
    IntMatrix s(idx.size(), std::vector<std::int64_t>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = a_[idx[i]][idx[j]];
    return GeneralizedCartanMatrix(std::move(s));
  }

  bool is_symmetric() const {
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (a_[i][j] != a_[j][i]) return false;
    return true;
  }

  // Exists positive diagonal D with D A symmetric: d_i a_ij = d_j a_ji.
  bool is_symmetrizable() const {
    int n = rank();
    std::vector<Rational> d(n);
    for (int root = 0; root < n; ++root) {
      if (d[root] != 0) continue;
      d[root] = 1;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n; ++j) {
          if (i == j || a_[i][j] == 0) continue;
          Rational want = d[i] * Rational(static_cast<long>(a_[i][j])) / Rational(static_cast<long>(a_[j][i]));
          if (d[j] == 0) {
            d[j] = want;
            stack.push_back(j);
          } else if (d[j] != want) {
            return false;
          }
        }
      }
    }
    return true;
  }

  int matrix_rank() const { return dense::rank(to_rational(a_)); }

  // Finite type: every principal minor is positive.
  bool principal_minors_positive() const {
    int n = rank();
    auto q = to_rational(a_);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      RationalMatrix sub(idx.size(), RationalVector(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = q[idx[i]][idx[j]];
      if (sgn(dense::determinant(sub)) <= 0) return false;
    }
    return true;
  }

  friend bool operator==(const GeneralizedCartanMatrix& a, const GeneralizedCartanMatrix& b) { return a.a_ == b.a_; }

 private:
  IntMatrix a_;
};

// Roots are covectors on V_H, coroots are vectors in V_H, both in coordinates of Z^dim_h.
struct Realization {
  GeneralizedCartanMatrix cartan;
  int dim_h = 0;
  IntMatrix roots;
  IntMatrix coroots;
  bool minimal_default = false;  // built by Realization::minimal

  int rank() const { return cartan.rank(); }

  static std::int64_t pair(const std::vector<std::int64_t>& covector, const std::vector<std::int64_t>& vector) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < covector.size(); ++k) s = checked_add64(s, checked_mul64(covector[k], vector[k]));
    return s;
  }

  void validate() const {
    cartan.validate();
    int r = rank();
    if (dim_h < r) throw InvalidCartanMatrix("dim_h must be at least the rank");
    if (static_cast<int>(roots.size()) != r || static_cast<int>(coroots.size()) != r)
      throw InvalidCartanMatrix("need one root and one coroot per simple reflection");
    for (int i = 0; i < r; ++i)
      if (static_cast<int>(roots[i].size()) != dim_h || static_cast<int>(coroots[i].size()) != dim_h)
        throw InvalidCartanMatrix("root/coroot length must equal dim_h");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (pair(roots[j], coroots[i]) != cartan(i, j))
          throw InvalidCartanMatrix("<coroot_" + std::to_string(i) + ", root_" + std::to_string(j) + "> != a[" +
                                    std::to_string(i) + "][" + std::to_string(j) + "]");
    if (dense::rank(to_rational(roots)) != r) throw InvalidCartanMatrix("simple roots are linearly dependent");
    if (dense::rank(to_rational(coroots)) != r) throw InvalidCartanMatrix("simple coroots are linearly dependent");
  }

  // dim_h = 2 rank - rank(A); coroots are the first unit vectors, the extra
  // root coordinates are unit entries chosen greedily to make roots independent.
  static Realization minimal(const GeneralizedCartanMatrix& a) {
    Realization re;
    re.cartan = a;
    int r = a.rank();
    int corank = r - a.matrix_rank();
    re.dim_h = r + corank;
    re.minimal_default = true;
    re.coroots.assign(r, std::vector<std::int64_t>(re.dim_h, 0));
    re.roots.assign(r, std::vector<std::int64_t>(re.dim_h, 0));
    for (int i = 0; i < r; ++i) re.coroots[i][i] = 1;
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) re.roots[j][i] = a(i, j);
    for (int k = r; k < re.dim_h; ++k) {
      int cur = dense::rank(to_rational(re.roots));
      for (int j = 0; j < r; ++j) {
        re.roots[j][k] = 1;
        if (dense::rank(to_rational(re.roots)) > cur) break;
        re.roots[j][k] = 0;
      }
    }
    re.validate();
    return re;
  }

  Realization dual() const {
    Realization d;
    d.cartan = cartan.transpose();
    d.dim_h = dim_h;
    d.roots = coroots;
    d.coroots = roots;
    d.minimal_default = minimal_default;
    return d;
  }

  friend bool operator==(const Realization& a, const Realization& b) {
    return a.cartan == b.cartan && a.dim_h == b.dim_h && a.roots == b.roots && a.coroots == b.coroots;
  }
};

// Group element. `word` is the lexicographically least reduced word, `root_action`
// is the matrix of w on the root lattice (columns = images of simple roots) and
// `root_action_inv` that of w^{-1}. `action` is the matrix of w on V_H.
struct WeylElement {
  Word word;
  std::vector<std::int64_t> root_action;
  std::vector<std::int64_t> root_action_inv;
  std::vector<std::int64_t> action;
  int rank = 0;

  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }
  std::string to_string() const { return word_to_string(word); }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.word == b.word; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return a.word != b.word; }
  // ShortLex
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  }
};

struct ParabolicSubset {
  std::vector<int> generators;
  bool finite_type = false;
  bool contains(int s) const { return std::binary_search(generators.begin(), generators.end(), s); }
};

enum class CosetSide { left, right };
enum class CosetKind { minimal, maximal };

class WeylGroup {
 public:
  WeylGroup() = default;
  explicit WeylGroup(Realization re) {
    re.validate();
    auto d = std::make_shared<Data>();
    d->real = std::move(re);
    d->r = d->real.rank();
    d->n = d->real.dim_h;
    int r = d->r, n = d->n;
    for (int i = 0; i < r; ++i) {
      // on V_H: v -> v - alpha_i(v) alpha_i^vee
      std::vector<std::int64_t> m(n * n, 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          m[a * n + b] = (a == b ? 1 : 0) - d->real.coroots[i][a] * d->real.roots[i][b];
      d->v_refl.push_back(std::move(m));
    }
    data_ = std::move(d);
    identity_ = make_identity();
  }

  const Realization& realization() const { return data_->real; }
  const GeneralizedCartanMatrix& cartan() const { return data_->real.cartan; }
  int rank() const { return data_->r; }
  int dim_h() const { return data_->n; }

  const WeylElement& identity() const { return identity_; }
  WeylElement generator(int s) const { return element(Word{s}); }

  // Arbitrary (not necessarily reduced) word.
  WeylElement element(const Word& w) const {
    WeylElement x = identity_;
    for (int s : w) x = right_multiply(x, s);
    return x;
  }

  WeylElement multiply(const WeylElement& u, const WeylElement& v) const {
    int r = rank(), n = dim_h();
    WeylElement x;
    x.rank = r;
    x.root_action = matmul(u.root_action, v.root_action, r);
    x.root_action_inv = matmul(v.root_action_inv, u.root_action_inv, r);
    x.action = matmul(u.action, v.action, n);
    x.word = normal_word(x.root_action_inv);
    return x;
  }

  WeylElement inverse(const WeylElement& w) const {
    WeylElement x = w;
    std::swap(x.root_action, x.root_action_inv);
    x.action = inverse_action(w);
    x.word = normal_word(x.root_action_inv);
    return x;
  }

  WeylElement left_multiply(int s, const WeylElement& w) const { return multiply(generator_cached(s), w); }
  WeylElement right_multiply(const WeylElement& w, int s) const {
    int r = rank(), n = dim_h();
    WeylElement x;
    x.rank = r;
    x.root_action = w.root_action;
    apply_column_reflection(x.root_action, s);
    x.root_action_inv = w.root_action_inv;
    apply_row_reflection(x.root_action_inv, s);
    x.action = matmul(w.action, data_->v_refl[s], n);
    x.word = normal_word(x.root_action_inv);
    return x;
  }

  // w^{-1}(alpha_s) < 0
  bool is_left_descent(const WeylElement& w, int s) const { return column_negative(w.root_action_inv, s); }
  // w(alpha_s) < 0
  bool is_right_descent(const WeylElement& w, int s) const { return column_negative(w.root_action, s); }

  std::vector<int> left_descents(const WeylElement& w) const {
    std::vector<int> d;
    for (int s = 0; s < rank(); ++s)
      if (is_left_descent(w, s)) d.push_back(s);
    return d;
  }
  std::vector<int> right_descents(const WeylElement& w) const {
    std::vector<int> d;
    for (int s = 0; s < rank(); ++s)
      if (is_right_descent(w, s)) d.push_back(s);
    return d;
  }

  // Image of a root-lattice vector (coefficients on simple roots).
  std::vector<std::int64_t> act_on_root(const WeylElement& w, const std::vector<std::int64_t>& beta) const {
    int r = rank();
    std::vector<std::int64_t> out(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out[i] = checked_add64(out[i], checked_mul64(w.root_action[i * r + j], beta[j]));
    return out;
  }

  bool bruhat_leq(const WeylElement& u, const WeylElement& w) const {
    if (u.length() > w.length()) return false;
    if (u.length() == w.length()) return u == w;
    if (u.is_identity()) return true;
    int s = w.word.front();  // smallest left descent
    WeylElement sw = left_multiply(s, w);
    if (is_left_descent(u, s)) return bruhat_leq(left_multiply(s, u), sw);
    return bruhat_leq(u, sw);
  }

  // All elements of length <= bound, in ShortLex order.
  std::vector<WeylElement> enumerate(int length_bound) const {
    std::vector<WeylElement> all{identity_};
    std::vector<WeylElement> layer{identity_};
    for (int len = 1; len <= length_bound; ++len) {
      std::set<WeylElement> next;
      for (auto& w : layer)
        for (int s = 0; s < rank(); ++s)
          if (!is_right_descent(w, s)) next.insert(right_multiply(w, s));
      layer.assign(next.begin(), next.end());
      if (layer.empty()) break;
      all.insert(all.end(), layer.begin(), layer.end());
    }
    return all;
  }

  ParabolicSubset parabolic(std::vector<int> theta) const {
    std::sort(theta.begin(), theta.end());
    theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
    for (int s : theta)
      if (s < 0 || s >= rank()) throw std::out_of_range("parabolic generator out of range: " + std::to_string(s));
    ParabolicSubset p;
    p.generators = theta;
    if (theta.empty()) {
      p.finite_type = true;
      return p;
    }
    GeneralizedCartanMatrix sub = cartan().restrict_to(theta);
    bool by_minors = sub.principal_minors_positive();
    bool by_enum = enumerates_finitely(sub);
    if (by_minors != by_enum)
      throw std::logic_error("finite-type classification disagrees with enumeration");
    p.finite_type = by_minors;
    return p;
  }

  WeylElement longest_element(const ParabolicSubset& theta) const {
    require_finite(theta);
    WeylElement w = identity_;
    for (bool grew = true; grew;) {
      grew = false;
      for (int s : theta.generators)
        if (!is_left_descent(w, s)) {
          w = left_multiply(s, w);
          grew = true;
          break;
        }
    }
    return w;
  }

  // w = u v with u in W_Theta and v minimal in W_Theta\W (side left), or
  // w = v u with v minimal in W/W_Theta (side right).
  std::pair<WeylElement, WeylElement> factor_parabolic(const WeylElement& w, const ParabolicSubset& theta,
                                                       CosetSide side = CosetSide::left) const {
    WeylElement u = identity_, v = w;
    for (bool found = true; found;) {
      found = false;
      for (int s : theta.generators) {
        if (side == CosetSide::left && is_left_descent(v, s)) {
          v = left_multiply(s, v);
          u = right_multiply(u, s);
          found = true;
          break;
        }
        if (side == CosetSide::right && is_right_descent(v, s)) {
          v = right_multiply(v, s);
          u = left_multiply(s, u);
          found = true;
          break;
        }
      }
    }
    return {u, v};
  }

  bool is_minimal_representative(const WeylElement& w, const ParabolicSubset& theta, CosetSide side) const {
    for (int s : theta.generators)
      if (side == CosetSide::left ? is_left_descent(w, s) : is_right_descent(w, s)) return false;
    return true;
  }

  std::vector<WeylElement> coset_representatives(const ParabolicSubset& theta, CosetSide side, CosetKind kind,
                                                  int length_bound) const {
    std::vector<WeylElement> out;
    if (kind == CosetKind::minimal) {
      for (auto& w : enumerate(length_bound))
        if (is_minimal_representative(w, theta, side)) out.push_back(w);
      return out;
    }
    require_finite(theta);
    WeylElement w0 = longest_element(theta);
    int bound = length_bound - w0.length();
    if (bound < 0) return out;
    for (auto& v : enumerate(bound)) {
      if (!is_minimal_representative(v, theta, side)) continue;
      out.push_back(side == CosetSide::left ? multiply(w0, v) : multiply(v, w0));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Elements of W_Theta (Theta finite type).
  std::vector<WeylElement> parabolic_elements(const ParabolicSubset& theta) const {
    require_finite(theta);
    int top = longest_element(theta).length();
    std::vector<WeylElement> out{identity_};
    std::vector<WeylElement> layer{identity_};
    for (int len = 1; len <= top; ++len) {
      std::set<WeylElement> next;
      for (auto& w : layer)
        for (int s : theta.generators)
          if (!is_right_descent(w, s)) next.insert(right_multiply(w, s));
      layer.assign(next.begin(), next.end());
      out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
  }

  static constexpr std::size_t kFiniteEnumerationCap = 1000000;

 private:
  struct Data {
    Realization real;
    int r = 0, n = 0;
    std::vector<std::vector<std::int64_t>> v_refl;
    std::vector<WeylElement> gens;
  };

  WeylElement make_identity() {
    int r = rank(), n = dim_h();
    WeylElement e;
    e.rank = r;
    e.root_action.assign(r * r, 0);
    e.action.assign(n * n, 0);
    for (int i = 0; i < r; ++i) e.root_action[i * r + i] = 1;
    for (int i = 0; i < n; ++i) e.action[i * n + i] = 1;
    e.root_action_inv = e.root_action;
    auto d = std::const_pointer_cast<Data>(data_);
    for (int s = 0; s < r; ++s) {
      WeylElement g = e;
      apply_column_reflection(g.root_action, s);
      apply_row_reflection(g.root_action_inv, s);
      g.action = d->v_refl[s];
      g.word = {s};
      d->gens.push_back(std::move(g));
    }
    return e;
  }

  const WeylElement& generator_cached(int s) const { return data_->gens.at(s); }

  void require_finite(const ParabolicSubset& theta) const {
    if (!theta.finite_type) throw NotFiniteType("parabolic subset is not of finite type");
  }

  // a real root has coefficients of one sign
  bool column_negative(const std::vector<std::int64_t>& m, int s) const {
    int r = rank();
    for (int i = 0; i < r; ++i) {
      if (m[i * r + s] < 0) return true;
      if (m[i * r + s] > 0) return false;
    }
    return false;
  }

  // M <- M * S_s (S_s on root lattice: column j gets e_j - a_sj e_s)
  void apply_column_reflection(std::vector<std::int64_t>& m, int s) const {
    int r = rank();
    for (int k = 0; k < r; ++k) {
      std::int64_t ms = m[k * r + s];
      if (ms == 0) continue;
      for (int j = 0; j < r; ++j) m[k * r + j] = checked_add64(m[k * r + j], -checked_mul64(ms, cartan()(s, j)));
    }
  }
  // M <- S_s * M (only row s changes)
  void apply_row_reflection(std::vector<std::int64_t>& m, int s) const {
    int r = rank();
    std::vector<std::int64_t> row(r, 0);
    for (int j = 0; j < r; ++j) {
      std::int64_t acc = m[s * r + j];
      for (int l = 0; l < r; ++l) acc = checked_add64(acc, -checked_mul64(cartan()(s, l), m[l * r + j]));
      row[j] = acc;
    }
    for (int j = 0; j < r; ++j) m[s * r + j] = row[j];
  }

  // Peel the smallest left descent until the identity is reached.
  Word normal_word(std::vector<std::int64_t> inv) const {
    Word w;
    for (;;) {
      int s = -1;
      for (int i = 0; i < rank(); ++i)
        if (column_negative(inv, i)) { s = i; break; }
      if (s < 0) break;
      w.push_back(s);
      apply_column_reflection(inv, s);
    }
    return w;
  }

  std::vector<std::int64_t> inverse_action(const WeylElement& w) const {
    int n = dim_h();
    std::vector<std::int64_t> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) m = matmul(m, data_->v_refl[*it], n);
    return m;
  }

  static std::vector<std::int64_t> matmul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, int n) {
    std::vector<std::int64_t> c(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        std::int64_t x = a[i * n + k];
        if (x == 0) continue;
        for (int j = 0; j < n; ++j) c[i * n + j] = checked_add64(c[i * n + j], checked_mul64(x, b[k * n + j]));
      }
    return c;
  }

  // BFS over the Weyl group of a sub-GCM acting on its own root lattice.
  static bool enumerates_finitely(const GeneralizedCartanMatrix& sub) {
    int r = sub.rank();
    auto reflect = [&](std::vector<std::int64_t> m, int s) {
      for (int k = 0; k < r; ++k) {
        std::int64_t ms = m[k * r + s];
        if (ms == 0) continue;
        for (int j = 0; j < r; ++j) m[k * r + j] -= ms * sub(s, j);
      }
      return m;
    };
    std::vector<std::int64_t> id(r * r, 0);
    for (int i = 0; i < r; ++i) id[i * r + i] = 1;
    std::set<std::vector<std::int64_t>> seen{id};
    std::deque<std::vector<std::int64_t>> queue{id};
    // root coefficients of a finite root system never exceed 6
    constexpr std::int64_t kMagnitude = 64;
    while (!queue.empty()) {
      auto m = std::move(queue.front());
      queue.pop_front();
      for (int s = 0; s < r; ++s) {
        auto next = reflect(m, s);
        for (auto x : next)
          if (x > kMagnitude || x < -kMagnitude) return false;
        if (seen.insert(next).second) {
          if (seen.size() > kFiniteEnumerationCap) return false;
          queue.push_back(std::move(next));
        }
      }
    }
    return true;
  }

  std::shared_ptr<const Data> data_;
  WeylElement identity_;
};

}  // namespace koszul
