#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszul/coxeter.hpp"
#include "koszul/laurent.hpp"

namespace koszul {

enum class HeckeBasis { standard, kl };

struct HeckeElement {
  std::map<WeylElement, Laurent> terms;
  HeckeBasis basis = HeckeBasis::standard;

  static HeckeElement basis_element(const WeylElement& w, HeckeBasis b = HeckeBasis::standard) {
    HeckeElement h;
    h.basis = b;
    h.terms[w] = Laurent(1);
    return h;
  }
  Laurent coeff(const WeylElement& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? Laurent() : it->second;
  }
  void add(const WeylElement& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto& slot = terms[w];
    slot += c;
    if (slot.is_zero()) terms.erase(w);
  }
  bool is_zero() const { return terms.empty(); }

  HeckeElement& operator+=(const HeckeElement& o) {
    check_basis(o);
    for (auto& [w, c] : o.terms) add(w, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    check_basis(o);
    for (auto& [w, c] : o.terms) add(w, -c);
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const Laurent& c, const HeckeElement& h) {
    HeckeElement r;
    r.basis = h.basis;
    for (auto& [w, p] : h.terms) r.add(w, c * p);
    return r;
  }
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.basis == b.basis && a.terms == b.terms;
  }

  void check_basis(const HeckeElement& o) const {
    if (o.basis != basis) throw std::invalid_argument("Hecke elements in different bases");
  }
};

// Standard basis arithmetic with H_s^2 = (v^{-1} - v) H_s + 1.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(WeylGroup g) : g_(std::move(g)) {}
  const WeylGroup& group() const { return g_; }

  HeckeElement H(const WeylElement& w) const { return HeckeElement::basis_element(w); }
  HeckeElement unit() const { return H(g_.identity()); }

  HeckeElement right_mult_s(const HeckeElement& h, int s) const {
    require_standard(h);
    HeckeElement r;
    for (auto& [w, c] : h.terms) {
      WeylElement ws = g_.right_multiply(w, s);
      if (ws.length() > w.length()) {
        r.add(ws, c);
      } else {
        r.add(ws, c);
        r.add(w, c * (Laurent::vinv() - Laurent::v()));
      }
    }
    return r;
  }
  HeckeElement left_mult_s(int s, const HeckeElement& h) const {
    require_standard(h);
    HeckeElement r;
    for (auto& [w, c] : h.terms) {
      WeylElement sw = g_.left_multiply(s, w);
      r.add(sw, c);
      if (sw.length() < w.length()) r.add(w, c * (Laurent::vinv() - Laurent::v()));
    }
    return r;
  }

  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const {
    require_standard(a);
    require_standard(b);
    HeckeElement r;
    for (auto& [y, c] : b.terms) {
      HeckeElement x = a;
      for (int s : y.word) x = right_mult_s(x, s);
      r += c * x;
    }
    return r;
  }

  // b_s = H_s + v
  HeckeElement b_s(int s) const {
    HeckeElement h = H(g_.generator(s));
    h.add(g_.identity(), Laurent::v());
    return h;
  }

  // b_{s1} ... b_{sm}
  HeckeElement bott_samelson(const Word& word) const {
    HeckeElement h = unit();
    for (int s : word) {
      HeckeElement t = right_mult_s(h, s);
      t += Laurent::v() * h;
      h = std::move(t);
    }
    return h;
  }

  // bar(H_w) along the canonical word, bar(H_s) = H_s + (v - v^{-1}).
  HeckeElement bar_standard(const WeylElement& w) const { return bar_along_word(w.word); }

  // Same computation along an arbitrary reduced word of w.
  HeckeElement bar_along_word(const Word& word) const {
    HeckeElement h = unit();
    for (int s : word) {
      HeckeElement t = right_mult_s(h, s);
      t += (Laurent::v() - Laurent::vinv()) * h;
      h = std::move(t);
    }
    return h;
  }

  HeckeElement bar(const HeckeElement& h) const {
    require_standard(h);
    HeckeElement r;
    for (auto& [w, c] : h.terms) r += c.bar() * bar_standard(w);
    return r;
  }

  // iota(H_w) = H_{w^{-1}}, v-linear
  HeckeElement iota(const HeckeElement& h) const {
    require_standard(h);
    HeckeElement r;
    for (auto& [w, c] : h.terms) r.add(g_.inverse(w), c);
    return r;
  }

  Laurent epsilon(const HeckeElement& h) const {
    require_standard(h);
    return h.coeff(g_.identity());
  }

  // epsilon(iota(x) y)
  Laurent hom_pairing(const HeckeElement& x, const HeckeElement& y) const { return epsilon(multiply(iota(x), y)); }

  static void require_standard(const HeckeElement& h) {
    if (h.basis != HeckeBasis::standard) throw std::invalid_argument("expected an element in the standard basis");
  }

 private:
  WeylGroup g_;
};

// Graded rank of Hom between unshifted Bott-Samelson bimodules on words x, y is
// v^{kBottSamelsonTwist * (|y| - |x|)} * hom_pairing(b_x, b_y). The exponent is
// fixed by the SL(2) calibration test (Calibration.SL2FixesTwist): Hom(R, B_s)
// has one generator in degree 2 while the pairing of H_e with b_s is v.
inline constexpr int kBottSamelsonTwist = 1;

inline Laurent predicted_hom_rank(const HeckeAlgebra& h, const Word& x, const Word& y) {
  Laurent p = h.hom_pairing(h.bott_samelson(x), h.bott_samelson(y));
  return p.shifted(kBottSamelsonTwist * (static_cast<int>(y.size()) - static_cast<int>(x.size())));
}

struct KLError : std::logic_error {
  using std::logic_error::logic_error;
};

// Lazily computed KL basis. b_w is stored in the standard basis with coefficients
// h_{u,w} = v^{l(w)-l(u)} P_{u,w}(v^{-2}). Many concurrent readers, one writer.
class KLTable {
 public:
  explicit KLTable(HeckeAlgebra h) : h_(std::move(h)) {}

  const HeckeAlgebra& algebra() const { return h_; }
  const WeylGroup& group() const { return h_.group(); }

  HeckeElement kl_basis(const WeylElement& w) {
    {
      std::shared_lock lk(mu_);
      auto it = b_.find(w);
      if (it != b_.end()) return it->second;
    }
    std::unique_lock lk(mu_);
    return compute_locked(w);
  }

  Laurent h_coeff(const WeylElement& u, const WeylElement& w) { return kl_basis(w).coeff(u); }

  // P_{u,w} as a polynomial in q, returned as Laurent in the variable q.
  Laurent kl_poly(const WeylElement& u, const WeylElement& w) {
    Laurent hc = h_coeff(u, w);
    Laurent p;
    int d = w.length() - u.length();
    for (auto [e, c] : hc.terms()) {
      if ((d - e) % 2 != 0) throw KLError("parity violation in KL coefficient");
      p.add_term((d - e) / 2, c);
    }
    return p;
  }

  int mu(const WeylElement& y, const WeylElement& w) {
    if (!(y < w)) return 0;
    return static_cast<int>(h_coeff(y, w).coeff(1));
  }

  // Expand a standard-basis element in the KL basis.
  HeckeElement to_kl(HeckeElement h) {
    HeckeAlgebra::require_standard(h);
    HeckeElement out;
    out.basis = HeckeBasis::kl;
    while (!h.is_zero()) {
      WeylElement top = h.terms.rbegin()->first;  // ShortLex max has maximal length
      Laurent c = h.terms.rbegin()->second;
      out.add(top, c);
      h -= c * kl_basis(top);
    }
    return out;
  }

  HeckeElement to_standard(const HeckeElement& k) {
    if (k.basis == HeckeBasis::standard) return k;
    HeckeElement r;
    for (auto& [w, c] : k.terms) r += c * kl_basis(w);
    return r;
  }

  // Import precomputed data (cache). Values are validated lazily by callers.
  void insert(const WeylElement& w, HeckeElement b) {
    std::unique_lock lk(mu_);
    b_[w] = std::move(b);
    dirty_ = true;
  }

  std::map<WeylElement, HeckeElement> snapshot() const {
    std::shared_lock lk(mu_);
    return b_;
  }
  bool dirty() const { return dirty_; }
  void mark_clean() { dirty_ = false; }
  std::string provenance = "computed";

 private:
  HeckeElement compute_locked(const WeylElement& w) {
    auto it = b_.find(w);
    if (it != b_.end()) return it->second;
    const WeylGroup& g = group();
    HeckeElement b;
    if (w.is_identity()) {
      b = h_.unit();
    } else {
      int s = w.word.back();
      WeylElement wp = g.right_multiply(w, s);
      HeckeElement bp = compute_locked(wp);
      // b_{w'} b_s = b_{w'} H_s + v b_{w'}
      b = h_.right_mult_s(bp, s);
      b += Laurent::v() * bp;
      for (auto& [y, c] : bp.terms) {
        if (y == wp) continue;
        if (!g.is_right_descent(y, s)) continue;
        std::int64_t m = c.coeff(1);
        if (m == 0) continue;
        b -= Laurent(m) * compute_locked(y);
      }
    }
    validate(w, b);
    b_[w] = b;
    dirty_ = true;
    return b;
  }

  void validate(const WeylElement& w, const HeckeElement& b) const {
    if (b.coeff(w) != Laurent(1)) throw KLError("leading coefficient of b_" + w.to_string() + " is not 1");
    for (auto& [u, c] : b.terms) {
      if (u == w) continue;
      if (c.is_zero()) continue;
      if (c.min_degree() < 1) throw KLError("KL coefficient not in vZ[v] for " + u.to_string() + "," + w.to_string());
      for (auto [e, x] : c.terms())
        if (x < 0) throw KLError("negative KL coefficient at (" + u.to_string() + "," + w.to_string() + ")");
    }
  }

  HeckeAlgebra h_;
  mutable std::shared_mutex mu_;
  std::map<WeylElement, HeckeElement> b_;
  bool dirty_ = false;
};

// ---------------------------------------------------------------------------
// Parabolic modules over W_Theta\W. The spherical module has H_t acting by v^{-1}
// for t in Theta, the antispherical one by -v.

enum class ParabolicFlavor { spherical, antispherical };

struct ParabolicModuleElement {
  std::map<WeylElement, Laurent> terms;  // keys are minimal representatives
  ParabolicSubset theta;
  ParabolicFlavor flavor = ParabolicFlavor::spherical;

  Laurent coeff(const WeylElement& x) const {
    auto it = terms.find(x);
    return it == terms.end() ? Laurent() : it->second;
  }
  void add(const WeylElement& x, const Laurent& c) {
    if (c.is_zero()) return;
    auto& slot = terms[x];
    slot += c;
    if (slot.is_zero()) terms.erase(x);
  }
  bool is_zero() const { return terms.empty(); }
};

class ParabolicModule {
 public:
  ParabolicModule(HeckeAlgebra h, ParabolicSubset theta, ParabolicFlavor flavor)
      : h_(std::move(h)), theta_(std::move(theta)), flavor_(flavor) {}

  const WeylGroup& group() const { return h_.group(); }
  const ParabolicSubset& theta() const { return theta_; }
  ParabolicFlavor flavor() const { return flavor_; }

  Laurent theta_scalar() const { return flavor_ == ParabolicFlavor::spherical ? Laurent::vinv() : -Laurent::v(); }

  ParabolicModuleElement basis_element(const WeylElement& x) const {
    if (!group().is_minimal_representative(x, theta_, CosetSide::left))
      throw std::invalid_argument("not a minimal coset representative: " + x.to_string());
    ParabolicModuleElement m = empty();
    m.add(x, Laurent(1));
    return m;
  }
  ParabolicModuleElement unit() const { return basis_element(group().identity()); }
  ParabolicModuleElement empty() const {
    ParabolicModuleElement m;
    m.theta = theta_;
    m.flavor = flavor_;
    return m;
  }

  ParabolicModuleElement act_s(const ParabolicModuleElement& m, int s) const {
    const WeylGroup& g = group();
    ParabolicModuleElement r = empty();
    for (auto& [x, c] : m.terms) {
      WeylElement xs = g.right_multiply(x, s);
      if (xs.length() < x.length()) {
        r.add(xs, c);
        r.add(x, c * (Laurent::vinv() - Laurent::v()));
      } else if (g.is_minimal_representative(xs, theta_, CosetSide::left)) {
        r.add(xs, c);
      } else {
        // xs = t x with t in Theta
        r.add(x, c * theta_scalar());
      }
    }
    return r;
  }

  // Right action of a standard-basis Hecke element.
  ParabolicModuleElement act(const ParabolicModuleElement& m, const HeckeElement& h) const {
    HeckeAlgebra::require_standard(h);
    ParabolicModuleElement r = empty();
    for (auto& [w, c] : h.terms) {
      ParabolicModuleElement x = m;
      for (int s : w.word) x = act_s(x, s);
      for (auto& [y, p] : x.terms) r.add(y, c * p);
    }
    return r;
  }

  // Image of H_w under H -> M, h -> m_e h.
  ParabolicModuleElement project(const HeckeElement& h) const { return act(unit(), h); }

  ParabolicModuleElement bar(const ParabolicModuleElement& m) const {
    ParabolicModuleElement r = empty();
    for (auto& [x, c] : m.terms) {
      ParabolicModuleElement bx = act(unit(), h_.bar_standard(x));
      for (auto& [y, p] : bx.terms) r.add(y, c.bar() * p);
    }
    return r;
  }

  // Parabolic KL basis element N_x = m_x + sum_{y<x} n_{y,x} m_y, bar invariant,
  // n_{y,x} in vZ[v].
  ParabolicModuleElement kl_basis(const WeylElement& x) {
    auto it = kl_.find(x);
    if (it != kl_.end()) return it->second;
    ParabolicModuleElement n;
    if (x.is_identity()) {
      n = unit();
    } else {
      int s = x.word.back();
      WeylElement xp = group().right_multiply(x, s);
      ParabolicModuleElement np = kl_basis(xp);
      n = act_s(np, s);
      for (auto& [y, c] : np.terms) n.add(y, Laurent::v() * c);
      // remove non-positive powers, largest y first
      for (;;) {
        bool changed = false;
        for (auto jt = n.terms.rbegin(); jt != n.terms.rend(); ++jt) {
          if (jt->first == x) continue;
          const Laurent& c = jt->second;
          if (c.min_degree() >= 1) continue;
          Laurent p;
          for (auto [e, a] : c.terms()) {
            if (e > 0) continue;
            p.add_term(e, a);
            if (e < 0) p.add_term(-e, a);
          }
          WeylElement y = jt->first;
          ParabolicModuleElement ny = kl_basis(y);
          for (auto& [z, q] : ny.terms) n.add(z, -(p * q));
          changed = true;
          break;
        }
        if (!changed) break;
      }
    }
    kl_[x] = n;
    return n;
  }

  // In the P-normalization: n_{y,x} = v^{l(x)-l(y)} P(v^{-2}); returns P in q.
  Laurent parabolic_kl(const WeylElement& y, const WeylElement& x) {
    Laurent c = kl_basis(x).coeff(y);
    int d = x.length() - y.length();
    Laurent p;
    for (auto [e, a] : c.terms()) {
      if ((d - e) % 2 != 0) throw KLError("parity violation in parabolic KL coefficient");
      p.add_term((d - e) / 2, a);
    }
    return p;
  }

  // Expand in the parabolic KL basis.
  std::map<WeylElement, Laurent> to_kl(ParabolicModuleElement m) {
    std::map<WeylElement, Laurent> out;
    while (!m.is_zero()) {
      WeylElement top = m.terms.rbegin()->first;
      Laurent c = m.terms.rbegin()->second;
      out[top] += c;
      for (auto& [z, q] : kl_basis(top).terms) m.add(z, -(c * q));
    }
    return out;
  }

 private:
  HeckeAlgebra h_;
  ParabolicSubset theta_;
  ParabolicFlavor flavor_;
  std::map<WeylElement, ParabolicModuleElement> kl_;
};

}  // namespace koszul
