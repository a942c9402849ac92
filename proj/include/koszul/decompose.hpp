#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "koszul/bimod.hpp"
#include "koszul/coxeter.hpp"
#include "koszul/hecke.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

struct NotDecomposable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One isotypic piece: B_label [shift] (twist_doubled / 2), `multiplicity` times.
// bottom_degree is where the lowest generator of the piece sits inside the input.
struct DecompositionEntry {
  WeylElement label;
  int shift = 0;
  int twist_doubled = 0;
  int multiplicity = 0;
  int bottom_degree = 0;
};

struct Decomposition {
  RingSide side = RingSide::equivariant;
  std::vector<DecompositionEntry> entries;
  // Explicit primitive orthogonal idempotents, one per summand copy, when the
  // decomposition was computed directly on the module.
  std::vector<PolyMatrix> idempotents;
  std::vector<WeylElement> idempotent_labels;

  // label -> sum of mult * v^n for summands B_label[n](n/2) (equivariant) or
  // B_label(-n/2) (monodromic)
  std::map<WeylElement, Laurent> multiplicities() const {
    std::map<WeylElement, Laurent> m;
    for (auto& e : entries) {
      int n = side == RingSide::equivariant ? e.shift : -e.twist_doubled;
      m[e.label] = m[e.label] + Laurent::monomial(n) * Laurent(e.multiplicity);
    }
    return m;
  }
  int total_multiplicity() const {
    int t = 0;
    for (auto& e : entries) t += e.multiplicity;
    return t;
  }
};

// Normalized shift of a summand B_z found with bottom generator at degree g
// inside a module built from words of total length m (all pieces unshifted).
inline int normalized_shift(int m, int length_z, int g) { return m - length_z - g; }

inline DecompositionEntry make_entry(RingSide side, const WeylElement& z, int m, int g, int mult) {
  int n = normalized_shift(m, z.length(), g);
  DecompositionEntry e{z, n, n, mult, g};
  if (side == RingSide::monodromic) e.shift = 0, e.twist_doubled = -n;
  return e;
}

namespace detail {

inline std::set<WeylElement> subword_products(const WeylGroup& g, const Word& word) {
  std::set<WeylElement> cur{g.identity()};
  for (int s : word) {
    std::set<WeylElement> next = cur;
    for (auto& x : cur) next.insert(g.right_multiply(x, s));
    cur = std::move(next);
  }
  return cur;
}

// Returns c when m = c * identity, nothing otherwise.
inline std::optional<Rational> scalar_of(const PolyMatrix& m) {
  Rational c = m.rows() ? m(0, 0).constant_term() : Rational(0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const GradedPoly& p = m(i, j);
      if (i == j) {
        if (p != GradedPoly(c)) return std::nullopt;
      } else if (!p.is_zero()) {
        return std::nullopt;
      }
    }
  return c;
}

// Inverse over S of a square graded matrix whose constant part is invertible.
inline PolyMatrix graded_inverse(const PolyMatrix& a) {
  int n = a.rows();
  RationalMatrix a0 = a.constant_part();
  PolyMatrix inv0 = PolyMatrix::from_rational(dense::inverse(a0));
  PolyMatrix nil = a - PolyMatrix::from_rational(a0);
  PolyMatrix step = Rational(-1) * (inv0 * nil);
  PolyMatrix term = PolyMatrix::identity(n);
  PolyMatrix sum = PolyMatrix::identity(n);
  for (int k = 0; k < 4 * n + 64; ++k) {
    term = term * step;
    if (term.is_zero()) return sum * inv0;
    sum = sum + term;
  }
  throw NotDecomposable("graded inverse did not terminate");
}

}  // namespace detail

// Image of a degree-0 idempotent endomorphism e of x, as a bimodule with its own
// right basis (columns I of e, chosen with e0[I, I] invertible).
inline Bimodule idempotent_image(const Bimodule& x, const PolyMatrix& e) {
  RationalMatrix e0 = e.constant_part();
  int n = x.rank();
  std::vector<int> cols;
  for (int i = 0; i < n; ++i) {
    std::vector<int> trial = cols;
    trial.push_back(i);
    RationalMatrix sub(trial.size(), RationalVector(trial.size()));
    for (std::size_t a = 0; a < trial.size(); ++a)
      for (std::size_t b = 0; b < trial.size(); ++b) sub[a][b] = e0[trial[a]][trial[b]];
    if (sgn(dense::determinant(sub)) != 0) cols = std::move(trial);
  }
  if (static_cast<int>(cols.size()) != dense::rank(e0))
    throw NotDecomposable("no invertible principal minor of the idempotent");
  PolyMatrix m = e.select_columns(cols);
  PolyMatrix p = detail::graded_inverse(e.select_rows(cols).select_columns(cols)) * e.select_rows(cols);
  std::vector<Generator> gens;
  for (int i : cols) gens.push_back(x.generators()[i]);
  std::vector<PolyMatrix> left;
  for (auto& l : x.left_actions()) left.push_back(p * l * m);
  return Bimodule(x.ring(), std::move(gens), std::move(left), x.nominal_length(), x.word());
}

// Move generators so the lowest sits in degree 0, adjusting weights on the
// ring's degree-weight line.
inline Bimodule normalize_bottom(const Bimodule& b) {
  int g = b.min_degree();
  int gw = b.ring()->generator_weight();
  std::vector<Generator> gens = b.generators();
  for (auto& x : gens) {
    x.degree -= g;
    x.weight -= gw / 2 * g;
  }
  return Bimodule(b.ring(), std::move(gens), b.left_actions(), b.nominal_length(), b.word(), false);
}

// Indecomposable Soergel bimodules B_w over one ring, built on demand as the top
// summand of B_{w'} (x) B_s, together with the decompositions of B_y (x) B_s.
class SoergelLibrary {
 public:
  explicit SoergelLibrary(RingPtr ring) : ring_(std::move(ring)), group_(ring_->realization()) {}

  const RingPtr& ring() const { return ring_; }
  const WeylGroup& group() const { return group_; }

  // B_w, lowest generator in degree 0 with weight 0.
  Bimodule indecomposable(const WeylElement& w) {
    std::lock_guard lock(mutex_);
    return build(w);
  }

  // Splits x using the library's indecomposables. Candidate labels are the
  // products of subwords of x.word(). Returns explicit idempotents.
  Decomposition decompose(const Bimodule& x) {
    std::lock_guard lock(mutex_);
    auto cand = detail::subword_products(group_, x.word());
    std::vector<WeylElement> labels(cand.begin(), cand.end());
    Split sp = split(x, labels);
    PolyMatrix total = sp.accumulated;
    if (total != PolyMatrix::identity(x.rank())) throw NotDecomposable("summands do not exhaust the module");
    check_rank(x, sp);
    return to_decomposition(x, sp, true);
  }

  // Decomposition of B_y (x) B_s, cached.
  Decomposition decompose_with_generator(const WeylElement& y, int s) {
    std::lock_guard lock(mutex_);
    return product_with_generator(y, s);
  }

  // Multiplicities of B_s1 (x) ... (x) B_sm by the recursion through B_y (x) B_s.
  Decomposition decompose_word(const Word& word) {
    std::lock_guard lock(mutex_);
    std::map<WeylElement, Laurent> cur{{group_.identity(), Laurent::monomial(0)}};
    for (int s : word) {
      std::map<WeylElement, Laurent> next;
      for (auto& [y, mult] : cur) {
        Decomposition d = product_with_generator(y, s);
        for (auto& [z, m] : d.multiplicities()) next[z] = next[z] + mult * m;
      }
      cur.clear();
      for (auto& [z, m] : next)
        if (m != Laurent()) cur[z] = m;
    }
    Decomposition out;
    out.side = ring_->side();
    int m = static_cast<int>(word.size());
    for (auto& [z, poly] : cur)
      for (int n = poly.min_degree(); n <= poly.max_degree(); ++n) {
        long c = poly.coeff(n);
        if (c == 0) continue;
        if (c < 0) throw NotDecomposable("negative multiplicity");
        out.entries.push_back(make_entry(out.side, z, m, m - z.length() - n, static_cast<int>(c)));
      }
    return out;
  }

  std::size_t cached_indecomposables() const {
    std::lock_guard lock(mutex_);
    return indecomposables_.size();
  }

 private:
  struct Piece {
    WeylElement label;
    int degree;  // bottom generator of the piece inside x
    std::vector<PolyMatrix> inclusions, projections;
  };
  struct Split {
    std::vector<Piece> pieces;
    PolyMatrix accumulated;
  };

  const Bimodule& build(const WeylElement& w) {
    auto it = indecomposables_.find(w);
    if (it != indecomposables_.end()) return it->second;
    Bimodule b;
    if (w.is_identity()) {
      b = diagonal_bimodule(ring_);
    } else if (w.length() == 1) {
      b = elementary_bimodule(ring_, w.word[0]);
    } else {
      Word prefix(w.word.begin(), w.word.end() - 1);
      int s = w.word.back();
      Bimodule x = tensor(build(group_.element(prefix)), elementary_bimodule(ring_, s));
      auto cand = detail::subword_products(group_, w.word);
      std::vector<WeylElement> lower;
      for (auto& y : cand)
        if (!(y == w)) lower.push_back(y);
      Split sp = split(x, lower);
      PolyMatrix top = PolyMatrix::identity(x.rank()) - sp.accumulated;
      if (top.is_zero()) throw NotDecomposable("no top summand for " + word_to_string(w.word));
      b = normalize_bottom(idempotent_image(x, top));
      if (hom_in_degree(b, b, 0).size() != 1)
        throw NotDecomposable("top summand for " + word_to_string(w.word) + " is not indecomposable");
    }
    b.set_nominal_length(w.length());
    b = Bimodule(ring_, b.generators(), b.left_actions(), w.length(), w.word, false);
    return indecomposables_.emplace(w, std::move(b)).first->second;
  }

  Decomposition product_with_generator(const WeylElement& y, int s) {
    auto key = std::make_pair(y, s);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    Bimodule x = tensor(build(y), elementary_bimodule(ring_, s));
    Word word = y.word;
    word.push_back(s);
    auto cand = detail::subword_products(group_, word);
    std::vector<WeylElement> labels(cand.begin(), cand.end());
    Split sp = split(x, labels);
    if (sp.accumulated != PolyMatrix::identity(x.rank()))
      throw NotDecomposable("summands do not exhaust B_" + word_to_string(y.word) + " B_" + std::to_string(s));
    check_rank(x, sp);
    Decomposition d = to_decomposition(x, sp, false);
    products_.emplace(key, d);
    return d;
  }

  // For each label y and degree g, pairs Hom^g(B_y, x) against Hom^-g(x, B_y);
  // the rank of the resulting scalar matrix is the multiplicity of B_y at g.
  Split split(const Bimodule& x, const std::vector<WeylElement>& labels) {
    Split sp;
    sp.accumulated = PolyMatrix(x.rank(), x.rank());
    std::set<int> degrees;
    for (auto& g : x.generators()) degrees.insert(g.degree);
    // higher labels first keeps the correction terms small
    std::vector<WeylElement> order = labels;
    std::sort(order.begin(), order.end(), [](const WeylElement& a, const WeylElement& b) { return b < a; });
    for (auto& y : order) {
      const Bimodule& by = build(y);
      for (int g : degrees) {
        auto gs = hom_in_degree(x, by, -g);
        if (gs.empty()) continue;
        auto fs = hom_in_degree(by, x, g);
        if (fs.empty()) continue;
        PolyMatrix one_minus = PolyMatrix::identity(x.rank()) - sp.accumulated;
        std::vector<PolyMatrix> f, h;
        for (auto& e : fs) f.push_back(one_minus * e.matrix);
        for (auto& e : gs) h.push_back(e.matrix * one_minus);
        RationalMatrix pair(h.size(), RationalVector(f.size()));
        for (std::size_t a = 0; a < h.size(); ++a)
          for (std::size_t b = 0; b < f.size(); ++b) {
            auto c = detail::scalar_of(h[a] * f[b]);
            if (!c) throw NotDecomposable("degree-0 endomorphism of B_" + word_to_string(y.word) + " is not scalar");
            pair[a][b] = *c;
          }
        auto cols = dense::rref(pair).pivot_cols;
        if (cols.empty()) continue;
        RationalMatrix tr(f.size(), RationalVector(h.size()));
        for (std::size_t a = 0; a < h.size(); ++a)
          for (std::size_t b = 0; b < f.size(); ++b) tr[b][a] = pair[a][b];
        auto rows = dense::rref(tr).pivot_cols;
        std::size_t r = cols.size();
        RationalMatrix sub(r, RationalVector(r));
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) sub[a][b] = pair[rows[a]][cols[b]];
        RationalMatrix q = dense::inverse(sub);
        Piece piece{y, g, {}, {}};
        for (std::size_t j = 0; j < r; ++j) {
          PolyMatrix inc(x.rank(), by.rank());
          for (std::size_t b = 0; b < r; ++b)
            if (!is_zero(q[b][j])) inc = inc + q[b][j] * f[cols[b]];
          piece.inclusions.push_back(inc);
          piece.projections.push_back(h[rows[j]]);
          sp.accumulated = sp.accumulated + inc * h[rows[j]];
        }
        sp.pieces.push_back(std::move(piece));
      }
    }
    return sp;
  }

  void check_rank(const Bimodule& x, const Split& sp) {
    Laurent sum;
    for (auto& p : sp.pieces) {
      Laurent r = build(p.label).graded_rank().shifted(p.degree);
      sum = sum + r * Laurent(static_cast<long>(p.inclusions.size()));
    }
    if (sum != x.graded_rank()) throw NotDecomposable("graded ranks of summands do not add up");
  }

  Decomposition to_decomposition(const Bimodule& x, const Split& sp, bool with_idempotents) {
    Decomposition d;
    d.side = ring_->side();
    for (auto& p : sp.pieces) {
      d.entries.push_back(
          make_entry(d.side, p.label, x.nominal_length(), p.degree, static_cast<int>(p.inclusions.size())));
      if (with_idempotents)
        for (std::size_t j = 0; j < p.inclusions.size(); ++j) {
          d.idempotents.push_back(p.inclusions[j] * p.projections[j]);
          d.idempotent_labels.push_back(p.label);
        }
    }
    std::sort(d.entries.begin(), d.entries.end(), [](const DecompositionEntry& a, const DecompositionEntry& b) {
      return std::tie(a.label, a.shift, a.twist_doubled) < std::tie(b.label, b.shift, b.twist_doubled);
    });
    return d;
  }

  RingPtr ring_;
  WeylGroup group_;
  mutable std::recursive_mutex mutex_;
  std::map<WeylElement, Bimodule> indecomposables_;
  std::map<std::pair<WeylElement, int>, Decomposition> products_;
};

}  // namespace koszul
