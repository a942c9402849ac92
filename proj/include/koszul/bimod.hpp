#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszul/bigraded.hpp"
#include "koszul/coxeter.hpp"
#include "koszul/hecke.hpp"
#include "koszul/linalg.hpp"
#include "koszul/polyring.hpp"

namespace koszul {

struct SideMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegreeBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidBimodule : std::logic_error {
  using std::logic_error::logic_error;
};

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GradedPoly(Rational(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GradedPoly& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const GradedPoly& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool is_zero() const {
    for (auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const GradedPoly& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const GradedPoly& y = b(k, j);
          if (y.is_zero()) continue;
          c(i, j) += x * y;
        }
      }
    return c;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend PolyMatrix operator*(const Rational& c, PolyMatrix a) {
    for (auto& p : a.a_) p = p * c;
    return a;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  PolyMatrix select_columns(const std::vector<int>& cols) const {
    PolyMatrix m(rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, cols[j]);
    return m;
  }
  PolyMatrix select_rows(const std::vector<int>& rows) const {
    PolyMatrix m(static_cast<int>(rows.size()), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < cols_; ++j) m(static_cast<int>(i), j) = (*this)(rows[i], j);
    return m;
  }
  RationalMatrix constant_part() const {
    RationalMatrix r(rows_, RationalVector(cols_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j).constant_term();
    return r;
  }
  RationalMatrix evaluate(const std::vector<Rational>& point) const {
    RationalMatrix r(rows_, RationalVector(cols_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j).evaluate(point);
    return r;
  }
  static PolyMatrix from_rational(const RationalMatrix& m) {
    PolyMatrix p(static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()));
    for (int i = 0; i < p.rows_; ++i)
      for (int j = 0; j < p.cols_; ++j) p(i, j) = GradedPoly(m[i][j]);
    return p;
  }

 private:
  static void check_same(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<GradedPoly> a_;
};

struct Generator {
  int degree = 0;
  int weight = 0;
  friend bool operator==(const Generator& a, const Generator& b) { return a.degree == b.degree && a.weight == b.weight; }
};

// Graded (S,S)-bimodule, free of finite rank over the right copy of S. For each
// ring variable x_k, left(k) is the matrix L with x_k . b_i = sum_l b_l L(l, i).
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(RingPtr ring, std::vector<Generator> gens, std::vector<PolyMatrix> left, int nominal_length = 0,
           Word word = {}, bool check = true)
      : ring_(std::move(ring)), gens_(std::move(gens)), left_(std::move(left)), nominal_length_(nominal_length),
        word_(std::move(word)) {
    if (check) validate();
  }

  const RingPtr& ring() const { return ring_; }
  const PolyRing& ring_data() const { return *ring_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const std::vector<Generator>& generators() const { return gens_; }
  const PolyMatrix& left(int k) const { return left_.at(k); }
  const std::vector<PolyMatrix>& left_actions() const { return left_; }
  // Sum of lengths of the words the module was built from.
  int nominal_length() const { return nominal_length_; }
  const Word& word() const { return word_; }
  void set_nominal_length(int m) { nominal_length_ = m; }

  int min_degree() const {
    int m = gens_.empty() ? 0 : gens_[0].degree;
    for (auto& g : gens_) m = std::min(m, g.degree);
    return m;
  }
  int max_degree() const {
    int m = gens_.empty() ? 0 : gens_[0].degree;
    for (auto& g : gens_) m = std::max(m, g.degree);
    return m;
  }

  // Generating function of generator degrees in v (exponent = degree; q = v^2).
  Laurent graded_rank() const {
    Laurent p;
    for (auto& g : gens_) p.add_term(g.degree, 1);
    return p;
  }

  // Matrix of left multiplication by f.
  PolyMatrix left_action_of(const GradedPoly& f) const {
    std::map<Monomial, PolyMatrix> cache;
    return evaluate_at_left(f, cache);
  }

  PolyMatrix evaluate_at_left(const GradedPoly& f, std::map<Monomial, PolyMatrix>& cache) const {
    PolyMatrix r(rank(), rank());
    for (auto& [m, c] : f.terms()) r = r + c * monomial_matrix(m, cache);
    return r;
  }

  void validate() const {
    if (!ring_) throw InvalidBimodule("bimodule without ring");
    int n = ring_->nvars();
    if (static_cast<int>(left_.size()) != n) throw InvalidBimodule("need one left-action matrix per ring variable");
    int gw = ring_->generator_weight();
    for (int k = 0; k < n; ++k) {
      const PolyMatrix& L = left_[k];
      if (L.rows() != rank() || L.cols() != rank()) throw InvalidBimodule("left-action matrix has wrong shape");
      for (int l = 0; l < rank(); ++l)
        for (int i = 0; i < rank(); ++i) {
          const GradedPoly& p = L(l, i);
          if (p.is_zero()) continue;
          int twice = gens_[i].degree + 2 - gens_[l].degree;
          if (twice < 0 || twice % 2 || !p.is_homogeneous() || 2 * p.degree() != twice)
            throw InvalidBimodule("left action is not homogeneous of degree 2");
          if (gens_[l].weight + gw * p.degree() != gens_[i].weight + gw)
            throw InvalidBimodule("left action breaks weight bookkeeping");
        }
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (left_[a] * left_[b] != left_[b] * left_[a]) throw InvalidBimodule("left-action matrices do not commute");
  }

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return *a.ring_ == *b.ring_ && a.gens_ == b.gens_ && a.left_ == b.left_;
  }

 private:
  const PolyMatrix& monomial_matrix(Monomial m, std::map<Monomial, PolyMatrix>& cache) const {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m == Monomial()) return cache.emplace(m, PolyMatrix::identity(rank())).first->second;
    int k = 0;
    while (m.exponent(k) == 0) ++k;
    PolyMatrix r = left_[k] * monomial_matrix(m / Monomial::variable(k), cache);
    return cache.emplace(m, std::move(r)).first->second;
  }

  RingPtr ring_;
  std::vector<Generator> gens_;
  std::vector<PolyMatrix> left_;
  int nominal_length_ = 0;
  Word word_;
};

inline void require_same_ring(const Bimodule& a, const Bimodule& b) {
  if (!(a.ring_data() == b.ring_data())) throw SideMismatch("bimodules live over different rings or sides");
}

// Rank-1 bimodule: f acts as right multiplication by w^{-1}.f. The generator
// sits in degree -shift with weight -twist_doubled.
inline Bimodule standard_bimodule(const RingPtr& ring, const WeylGroup& g, const WeylElement& w, int shift = 0,
                                  int twist_doubled = 0) {
  auto images = ring->variable_images(g.inverse(w));
  std::vector<PolyMatrix> left;
  for (auto& p : images) {
    PolyMatrix m(1, 1);
    m(0, 0) = p;
    left.push_back(std::move(m));
  }
  return Bimodule(ring, {{-shift, -twist_doubled}}, std::move(left), w.length(), {});
}

inline Bimodule diagonal_bimodule(const RingPtr& ring) {
  std::vector<PolyMatrix> left;
  for (int k = 0; k < ring->nvars(); ++k) {
    PolyMatrix m(1, 1);
    m(0, 0) = GradedPoly::variable(k);
    left.push_back(std::move(m));
  }
  return Bimodule(ring, {{0, 0}}, std::move(left), 0, {});
}

// B_s = S (x)_{S^s} S with right basis c0 = 1(x)1 and c1 = delta_s(x)1. Writing
// f = p + delta_s q:  f.c0 = c0 p + c1 q,  f.c1 = c0 delta_s^2 q + c1 p.
inline Bimodule elementary_bimodule(const RingPtr& ring, int s) {
  const GradedPoly& delta = ring->half_form(s);
  GradedPoly d2 = delta * delta;
  std::vector<PolyMatrix> left;
  for (int k = 0; k < ring->nvars(); ++k) {
    auto [p, q] = ring->split_invariant(s, GradedPoly::variable(k));
    PolyMatrix m(2, 2);
    m(0, 0) = p;
    m(1, 0) = q;
    m(0, 1) = d2 * q;
    m(1, 1) = p;
    left.push_back(std::move(m));
  }
  return Bimodule(ring, {{0, 0}, {2, ring->generator_weight()}}, std::move(left), 1, {s});
}

// B (x)_S C. Basis b_l (x) c_m is indexed l * rank(C) + m.
inline Bimodule tensor(const Bimodule& b, const Bimodule& c, bool check = true) {
  require_same_ring(b, c);
  int rb = b.rank(), rc = c.rank(), n = b.ring()->nvars();
  std::vector<Generator> gens;
  for (auto& x : b.generators())
    for (auto& y : c.generators()) gens.push_back({x.degree + y.degree, x.weight + y.weight});
  std::map<Monomial, PolyMatrix> cache;
  std::map<GradedPoly, PolyMatrix> evals;
  std::vector<PolyMatrix> left;
  for (int k = 0; k < n; ++k) {
    PolyMatrix L(rb * rc, rb * rc);
    const PolyMatrix& Lb = b.left(k);
    for (int l = 0; l < rb; ++l)
      for (int i = 0; i < rb; ++i) {
        const GradedPoly& p = Lb(l, i);
        if (p.is_zero()) continue;
        auto it = evals.find(p);
        if (it == evals.end()) it = evals.emplace(p, c.evaluate_at_left(p, cache)).first;
        const PolyMatrix& E = it->second;
        for (int m = 0; m < rc; ++m)
          for (int j = 0; j < rc; ++j) L(l * rc + m, i * rc + j) = E(m, j);
      }
    left.push_back(std::move(L));
  }
  Word w = b.word();
  w.insert(w.end(), c.word().begin(), c.word().end());
  return Bimodule(b.ring(), std::move(gens), std::move(left), b.nominal_length() + c.nominal_length(), std::move(w),
                  check);
}

// Unshifted Bott-Samelson bimodule B_{s1} (x) ... (x) B_{sm}; the empty word gives S.
inline Bimodule bott_samelson(const RingPtr& ring, const Word& word) {
  Bimodule b = diagonal_bimodule(ring);
  for (int s : word) b = tensor(b, elementary_bimodule(ring, s));
  return b;
}

// Same matrices over the other side of the dual realization, weights negated.
inline Bimodule dualize_side(const Bimodule& b) {
  std::vector<Generator> gens = b.generators();
  for (auto& g : gens) g.weight = -g.weight;
  return Bimodule(b.ring()->dual_side(), std::move(gens), b.left_actions(), b.nominal_length(), b.word());
}

// ---------------------------------------------------------------------------
// Graded Hom spaces.

struct HomElement {
  int degree = 0;
  int weight = 0;
  PolyMatrix matrix;  // target generators x source generators
};

struct GradedHomSpace {
  std::shared_ptr<const Bimodule> source, target;
  int degree_bound = 0;
  int min_degree = 0;
  std::map<int, std::vector<HomElement>> basis;  // by degree
  std::optional<Laurent> rank;                     // graded right-S rank, exponent = degree

  std::map<int, int> dims() const {
    std::map<int, int> d;
    for (auto& [deg, b] : basis)
      if (!b.empty()) d[deg] = static_cast<int>(b.size());
    return d;
  }
  int dim(int degree) const {
    auto it = basis.find(degree);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
  BigradedDim bigraded() const {
    BigradedDim t;
    for (auto& [deg, b] : basis)
      for (auto& e : b) t.add(deg, e.weight);
    return t;
  }
};

namespace detail {

struct EqKey {
  int j, l, i;
  std::uint64_t mono;
  friend bool operator==(const EqKey& a, const EqKey& b) {
    return a.j == b.j && a.l == b.l && a.i == b.i && a.mono == b.mono;
  }
};
struct EqKeyHash {
  std::size_t operator()(const EqKey& k) const {
    std::size_t h = std::hash<std::uint64_t>()(k.mono);
    h ^= (static_cast<std::size_t>(k.j) * 0x9e3779b97f4a7c15ULL) + (static_cast<std::size_t>(k.l) << 20) + k.i;
    return h;
  }
};

}  // namespace detail

// Basis of the degree-d component of Hom_{S(x)S}(B, C): matrices Phi with
// Phi L^B_k = L^C_k Phi for all k, entry (l, i) homogeneous of polynomial degree
// (d + deg b_i - deg c_l) / 2.
inline std::vector<HomElement> hom_in_degree(const Bimodule& b, const Bimodule& c, int d) {
  require_same_ring(b, c);
  int n = b.ring()->nvars();
  int rb = b.rank(), rc = c.rank();
  // unknown layout
  std::vector<int> offset(static_cast<std::size_t>(rc) * rb, -1);
  std::vector<std::vector<Monomial>> monos(static_cast<std::size_t>(rc) * rb);
  std::map<int, std::vector<Monomial>> by_degree;
  int nunk = 0;
  for (int l = 0; l < rc; ++l)
    for (int i = 0; i < rb; ++i) {
      int twice = d + b.generators()[i].degree - c.generators()[l].degree;
      if (twice < 0 || twice % 2) continue;
      int k = twice / 2;
      auto it = by_degree.find(k);
      if (it == by_degree.end()) it = by_degree.emplace(k, monomials_of_degree(n, k)).first;
      offset[l * rb + i] = nunk;
      monos[l * rb + i] = it->second;
      nunk += static_cast<int>(it->second.size());
    }
  if (nunk == 0) return {};

  std::unordered_map<detail::EqKey, SparseRow, detail::EqKeyHash> rows;
  auto emit = [&](int j, int l, int i, Monomial m, int unk, const Rational& coef) {
    rows[detail::EqKey{j, l, i, m.key()}].emplace_back(unk, coef);
  };
  for (int j = 0; j < n; ++j) {
    const PolyMatrix& Lc = c.left(j);
    const PolyMatrix& Lb = b.left(j);
    // (L^C Phi)(l, i) = sum_m L^C(l, m) Phi(m, i)
    for (int l = 0; l < rc; ++l)
      for (int m = 0; m < rc; ++m) {
        const GradedPoly& p = Lc(l, m);
        if (p.is_zero()) continue;
        for (int i = 0; i < rb; ++i) {
          int off = offset[m * rb + i];
          if (off < 0) continue;
          const auto& ms = monos[m * rb + i];
          for (std::size_t u = 0; u < ms.size(); ++u)
            for (auto& [pm, pc] : p.terms()) emit(j, l, i, pm * ms[u], off + static_cast<int>(u), pc);
        }
      }
    // -(Phi L^B)(l, i) = -sum_m Phi(l, m) L^B(m, i)
    for (int m = 0; m < rb; ++m)
      for (int i = 0; i < rb; ++i) {
        const GradedPoly& p = Lb(m, i);
        if (p.is_zero()) continue;
        for (int l = 0; l < rc; ++l) {
          int off = offset[l * rb + m];
          if (off < 0) continue;
          const auto& ms = monos[l * rb + m];
          for (std::size_t u = 0; u < ms.size(); ++u)
            for (auto& [pm, pc] : p.terms()) emit(j, l, i, pm * ms[u], off + static_cast<int>(u), -pc);
        }
      }
  }
  std::vector<SparseRow> system;
  system.reserve(rows.size());
  for (auto& [key, row] : rows) system.push_back(std::move(row));
  auto null = sparse_nullspace(system, nunk);

  int gw = b.ring()->generator_weight();
  std::vector<HomElement> out;
  for (auto& vec : null) {
    HomElement h;
    h.degree = d;
    h.matrix = PolyMatrix(rc, rb);
    bool have_weight = false;
    for (int l = 0; l < rc; ++l)
      for (int i = 0; i < rb; ++i) {
        int off = offset[l * rb + i];
        if (off < 0) continue;
        const auto& ms = monos[l * rb + i];
        GradedPoly p;
        for (std::size_t u = 0; u < ms.size(); ++u)
          if (!is_zero(vec[off + u])) p += GradedPoly::monomial(ms[u], vec[off + u]);
        if (p.is_zero()) continue;
        int w = c.generators()[l].weight + gw * p.degree() - b.generators()[i].weight;
        if (have_weight && w != h.weight) throw InvalidBimodule("Hom element is not pure of a single weight");
        h.weight = w;
        have_weight = true;
        h.matrix(l, i) = std::move(p);
      }
    out.push_back(std::move(h));
  }
  return out;
}

inline int default_degree_bound(const Bimodule& b, const Bimodule& c) { return c.max_degree() - b.min_degree() + 4; }

// Graded right-S rank from Hilbert series times (1 - v^2)^n, checked to be a
// nonnegative polynomial with no generators in the top 4 degrees of the window.
inline Laurent graded_rank_from_dims(const std::map<int, int>& dims, int nvars, int min_degree, int bound) {
  std::map<int, long> series;
  for (int d = min_degree; d <= bound; ++d) {
    auto it = dims.find(d);
    series[d] = it == dims.end() ? 0 : it->second;
  }
  for (int k = 0; k < nvars; ++k) {
    std::map<int, long> next;
    for (auto& [d, c] : series) {
      next[d] += c;
      if (d + 2 <= bound) next[d + 2] -= c;
    }
    series = std::move(next);
  }
  Laurent r;
  for (auto& [d, c] : series) {
    if (c < 0) throw DegreeBoundExceeded("Hilbert series is not that of a free module within the degree bound");
    if (c != 0 && d > bound - 4)
      throw DegreeBoundExceeded("Hom generators found near the degree bound " + std::to_string(bound));
    r.add_term(d, c);
  }
  return r;
}

inline GradedHomSpace hom_graded(const Bimodule& b, const Bimodule& c, std::optional<int> degree_bound = std::nullopt,
                                 bool want_rank = true) {
  require_same_ring(b, c);
  GradedHomSpace h;
  h.source = std::make_shared<const Bimodule>(b);
  h.target = std::make_shared<const Bimodule>(c);
  h.degree_bound = degree_bound ? *degree_bound : default_degree_bound(b, c);
  h.min_degree = c.min_degree() - b.max_degree();
  for (int d = h.min_degree; d <= h.degree_bound; ++d) {
    auto basis = hom_in_degree(b, c, d);
    if (!basis.empty()) h.basis[d] = std::move(basis);
  }
  if (want_rank) h.rank = graded_rank_from_dims(h.dims(), b.ring()->nvars(), h.min_degree, h.degree_bound);
  return h;
}

// Degree-0 maps X -> Y checked against all left actions.
inline bool is_bimodule_map(const Bimodule& x, const Bimodule& y, const PolyMatrix& phi) {
  for (int k = 0; k < x.ring()->nvars(); ++k)
    if (phi * x.left(k) != y.left(k) * phi) return false;
  return true;
}

// ---------------------------------------------------------------------------

enum class SpecializeSide { left, right };

// Graded dimensions of B (x)_S Q (right) or Q (x)_S B (left), keyed by
// (degree, weight).
inline BigradedDim specialize(const Bimodule& b, SpecializeSide side) {
  BigradedDim out;
  if (side == SpecializeSide::right) {
    for (auto& g : b.generators()) out.add(g.degree, g.weight);
    return out;
  }
  int n = b.ring()->nvars(), r = b.rank(), gw = b.ring()->generator_weight();
  int top = b.max_degree() + 4;
  for (int d = b.min_degree(); d <= top; ++d) {
    // basis of B_d: (i, monomial) with deg b_i + 2 deg mu = d
    std::map<std::pair<int, std::uint64_t>, int> index;
    std::map<int, int> weight_of;
    for (int i = 0; i < r; ++i) {
      int twice = d - b.generators()[i].degree;
      if (twice < 0 || twice % 2) continue;
      for (auto m : monomials_of_degree(n, twice / 2)) {
        int id = static_cast<int>(index.size());
        index[{i, m.key()}] = id;
        weight_of[id] = b.generators()[i].weight + gw * (twice / 2);
      }
    }
    if (index.empty()) continue;
    // image of S^+ . B_{d-2}: x_k . (b_i mu) = sum_l b_l L_k(l, i) mu
    std::map<int, SparseEchelon> per_weight;
    for (int i = 0; i < r; ++i) {
      int twice = d - 2 - b.generators()[i].degree;
      if (twice < 0 || twice % 2) continue;
      for (auto mu : monomials_of_degree(n, twice / 2))
        for (int k = 0; k < n; ++k) {
          SparseRow row;
          int w = 0;
          for (int l = 0; l < r; ++l)
            for (auto& [pm, pc] : b.left(k)(l, i).terms()) {
              int id = index.at({l, (pm * mu).key()});
              row.emplace_back(id, pc);
              w = weight_of[id];
            }
          if (row.empty()) continue;
          per_weight.try_emplace(w, static_cast<int>(index.size())).first->second.add_row(std::move(row));
        }
    }
    std::map<int, int> count;
    for (auto& [id, w] : weight_of) count[w]++;
    for (auto& [w, c] : count) {
      auto it = per_weight.find(w);
      int img = it == per_weight.end() ? 0 : it->second.rank();
      out.add(d, w, c - img);
      if (c - img > 0 && d > b.max_degree())
        throw DegreeBoundExceeded("left specialization does not terminate near generator degrees");
    }
  }
  return out;
}

// Matrices of the simple reflections on linear forms: column k holds s.x_k.
inline RationalMatrix reflection_on_forms(const PolyRing& r, int s) {
  int n = r.nvars();
  RationalMatrix m(n, RationalVector(n));
  for (int k = 0; k < n; ++k) {
    GradedPoly img = r.reflect(s, GradedPoly::variable(k));
    for (int j = 0; j < n; ++j) m[j][k] = img.coeff(Monomial::variable(j));
  }
  return m;
}

// Invertible T with T R_A(s) = R_B(s) T for every s, if one exists among a few
// deterministic combinations of the intertwiner space.
inline std::optional<RationalMatrix> find_intertwiner(const PolyRing& a, const PolyRing& b) {
  if (a.nvars() != b.nvars() || a.rank() != b.rank()) return std::nullopt;
  int n = a.nvars();
  RationalMatrix sys;
  for (int s = 0; s < a.rank(); ++s) {
    auto ra = reflection_on_forms(a, s), rb = reflection_on_forms(b, s);
    // (T ra - rb T)(i, j) = sum_k T(i,k) ra(k,j) - rb(i,k) T(k,j)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RationalVector row(n * n);
        for (int k = 0; k < n; ++k) {
          row[i * n + k] += ra[k][j];
          row[k * n + j] -= rb[i][k];
        }
        sys.push_back(std::move(row));
      }
  }
  auto null = dense::nullspace(sys, n * n);
  if (null.empty()) return std::nullopt;
  for (int trial = 0; trial < 8; ++trial) {
    RationalMatrix t(n, RationalVector(n));
    for (std::size_t v = 0; v < null.size(); ++v) {
      Rational c = static_cast<long>((v + 1) * (trial + 1) % 7 + 1);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] += c * null[v][i * n + j];
    }
    if (sgn(dense::determinant(t)) != 0) return t;
  }
  return std::nullopt;
}

}  // namespace koszul
