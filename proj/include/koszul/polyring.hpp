#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszul/coxeter.hpp"
#include "koszul/rational.hpp"

namespace koszul {

struct DivisionFailure : std::logic_error {
  using std::logic_error::logic_error;
};

// Exponent vector packed into 64 bits: total degree in the top byte, then one
// byte per variable. Integer order on the key is graded lexicographic order with
// x0 > x1 > ..., and multiplication is addition of keys.
class Monomial {
 public:
  static constexpr int kMaxVars = 7;
  static constexpr int kMaxExponent = 255;

  constexpr Monomial() = default;
  static Monomial from_key(std::uint64_t k) {
    Monomial m;
    m.key_ = k;
    return m;
  }
  static Monomial variable(int k) {
    check_var(k);
    return from_key((std::uint64_t{1} << 56) | (std::uint64_t{1} << shift(k)));
  }
  static Monomial from_exponents(const std::vector<int>& e) {
    if (static_cast<int>(e.size()) > kMaxVars) throw std::length_error("too many polynomial variables");
    std::uint64_t k = 0;
    int deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > kMaxExponent) throw std::overflow_error("exponent out of range");
      k |= static_cast<std::uint64_t>(e[i]) << shift(static_cast<int>(i));
      deg += e[i];
    }
    if (deg > kMaxExponent) throw std::overflow_error("monomial degree out of range");
    return from_key(k | (static_cast<std::uint64_t>(deg) << 56));
  }

  std::uint64_t key() const { return key_; }
  int degree() const { return static_cast<int>(key_ >> 56); }
  int exponent(int k) const { return static_cast<int>((key_ >> shift(k)) & 0xff); }
  std::vector<int> exponents(int nvars) const {
    std::vector<int> e(nvars);
    for (int k = 0; k < nvars; ++k) e[k] = exponent(k);
    return e;
  }

  friend Monomial operator*(Monomial a, Monomial b) {
    if (a.degree() + b.degree() > kMaxExponent) throw std::overflow_error("monomial degree out of range");
    return from_key(a.key_ + b.key_);
  }
  bool divides(Monomial b) const {
    for (int k = 0; k < kMaxVars; ++k)
      if (exponent(k) > b.exponent(k)) return false;
    return true;
  }
  friend Monomial operator/(Monomial b, Monomial a) { return from_key(b.key_ - a.key_); }

  friend bool operator==(Monomial a, Monomial b) { return a.key_ == b.key_; }
  friend bool operator!=(Monomial a, Monomial b) { return a.key_ != b.key_; }
  friend bool operator<(Monomial a, Monomial b) { return a.key_ < b.key_; }

 private:
  static int shift(int k) { return 48 - 8 * k; }
  static void check_var(int k) {
    if (k < 0 || k >= kMaxVars) throw std::out_of_range("polynomial variable index out of range");
  }
  std::uint64_t key_ = 0;
};

struct MonomialHash {
  std::size_t operator()(Monomial m) const { return std::hash<std::uint64_t>()(m.key()); }
};

// All monomials of a given polynomial degree in n variables, in increasing order.
inline std::vector<Monomial> monomials_of_degree(int nvars, int deg) {
  std::vector<Monomial> out;
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == nvars - 1) {
      e[k] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[k] = a;
      self(self, k + 1, left - a);
    }
  };
  if (nvars == 0) {
    if (deg == 0) out.push_back(Monomial());
    return out;
  }
  rec(rec, 0, deg);
  std::sort(out.begin(), out.end());
  return out;
}

// Polynomial as a sorted list of terms. Variables count toward degree 2 each in
// the cohomological grading; `degree()` below is the polynomial degree.
class GradedPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  GradedPoly() = default;
  GradedPoly(const Rational& c) {  // NOLINT
    if (!koszul::is_zero(c)) terms_.emplace_back(Monomial(), c);
  }
  static GradedPoly monomial(Monomial m, const Rational& c = 1) {
    GradedPoly p;
    if (!koszul::is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  static GradedPoly variable(int k) { return monomial(Monomial::variable(k)); }
  // sum_k coords[k] x_k
  template <typename T>
  static GradedPoly linear(const std::vector<T>& coords) {
    GradedPoly p;
    for (int k = static_cast<int>(coords.size()) - 1; k >= 0; --k) {
      Rational c(coords[k]);
      if (!koszul::is_zero(c)) p.terms_.emplace_back(Monomial::variable(k), c);
    }
    std::sort(p.terms_.begin(), p.terms_.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_homogeneous() const {
    for (auto& t : terms_)
      if (t.first.degree() != terms_.front().first.degree()) return false;
    return true;
  }
  // Polynomial degree of a nonzero homogeneous polynomial.
  int degree() const {
    if (terms_.empty()) throw std::logic_error("degree of zero polynomial");
    return terms_.back().first.degree();
  }
  GradedPoly homogeneous_part(int deg) const {
    GradedPoly p;
    for (auto& t : terms_)
      if (t.first.degree() == deg) p.terms_.push_back(t);
    return p;
  }
  Rational coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, Monomial x) { return t.first < x; });
    return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
  }
  Rational constant_term() const { return coeff(Monomial()); }

  GradedPoly& operator+=(const GradedPoly& o) { return *this = combine(*this, o, 1); }
  GradedPoly& operator-=(const GradedPoly& o) { return *this = combine(*this, o, -1); }
  friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) { return combine(a, b, 1); }
  friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return combine(a, b, -1); }
  friend GradedPoly operator-(const GradedPoly& a) { return a * Rational(-1); }
  friend GradedPoly operator*(const GradedPoly& a, const Rational& c) {
    if (koszul::is_zero(c)) return {};
    GradedPoly r = a;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  friend GradedPoly operator*(const Rational& c, const GradedPoly& a) { return a * c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1 && a.terms_[0].first == Monomial()) return b * a.terms_[0].second;
    if (b.size() == 1 && b.terms_[0].first == Monomial()) return a * b.terms_[0].second;
    std::map<Monomial, Rational> acc;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    GradedPoly r;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!koszul::is_zero(c)) r.terms_.emplace_back(m, c);
    return r;
  }
  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }
  GradedPoly times_monomial(Monomial m, const Rational& c = 1) const {
    GradedPoly r;
    if (koszul::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
    return r;
  }

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }
  friend bool operator<(const GradedPoly& a, const GradedPoly& b) {
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const Term& x, const Term& y) {
                                          if (x.first != y.first) return x.first < y.first;
                                          return x.second < y.second;
                                        });
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    Rational s = 0;
    for (auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t k = 0; k < point.size(); ++k)
        for (int e = m.exponent(static_cast<int>(k)); e > 0; --e) t *= point[k];
      s += t;
    }
    return s;
  }

  // Canonical text: leading term first, e.g. "3/2*x0^2*x1 - x2 + 1".
  std::string to_string(const std::string& var = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational mag = abs(c);
      if (first)
        os << (sgn(c) < 0 ? "-" : "");
      else
        os << (sgn(c) < 0 ? " - " : " + ");
      first = false;
      bool unit = mag == 1;
      bool constant = m == Monomial();
      if (!unit || constant) os << mag.get_str();
      bool need_star = !unit || constant;
      for (int k = 0; k < Monomial::kMaxVars; ++k) {
        int e = m.exponent(k);
        if (e == 0) continue;
        if (need_star) os << "*";
        os << var << k;
        if (e > 1) os << "^" << e;
        need_star = true;
      }
    }
    return os.str();
  }

  // Inverse of to_string.
  static GradedPoly parse(const std::string& text, const std::string& var = "x") {
    GradedPoly p;
    std::string s;
    for (char ch : text)
      if (ch != ' ') s += ch;
    if (s == "0" || s.empty()) return p;
    std::size_t i = 0;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+') ++i;
      else if (s[i] == '-') { sign = -1; ++i; }
      std::size_t j = i;
      while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
      std::string term = s.substr(i, j - i);
      i = j;
      Rational c = sign;
      std::vector<int> e(Monomial::kMaxVars, 0);
      std::stringstream ts(term);
      std::string factor;
      while (std::getline(ts, factor, '*')) {
        if (factor.compare(0, var.size(), var) == 0) {
          std::size_t caret = factor.find('^');
          int k = std::stoi(factor.substr(var.size(), caret == std::string::npos ? std::string::npos : caret - var.size()));
          int ex = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
          if (k < 0 || k >= Monomial::kMaxVars) throw std::invalid_argument("bad variable in polynomial: " + factor);
          e[k] += ex;
        } else {
          Rational q(factor);
          q.canonicalize();
          c *= q;
        }
      }
      p += monomial(Monomial::from_exponents(e), c);
    }
    return p;
  }

 private:
  static GradedPoly combine(const GradedPoly& a, const GradedPoly& b, int sign) {
    GradedPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, sign > 0 ? b.terms_[j].second : Rational(-b.terms_[j].second));
        ++j;
      } else {
        Rational c = sign > 0 ? Rational(a.terms_[i].second + b.terms_[j].second) : Rational(a.terms_[i].second - b.terms_[j].second);
        if (!koszul::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

enum class RingSide { equivariant, monodromic };

inline std::string to_string(RingSide s) { return s == RingSide::equivariant ? "equivariant" : "monodromic"; }

// Polynomial ring on a realization. On the equivariant side the variables are
// coordinates on V_H (so S = Sym(V_H^dual)), the reflection s negates the root
// alpha_s and each variable has weight +2. On the monodromic side the roles of
// roots and coroots are exchanged and each variable has weight -2.
class PolyRing {
 public:
  PolyRing(Realization re, RingSide side) : real_(std::move(re)), side_(side) {
    real_.validate();
    n_ = real_.dim_h;
    if (n_ > Monomial::kMaxVars) throw std::length_error("dim_h exceeds the supported number of variables");
    const IntMatrix& rho = side_ == RingSide::equivariant ? real_.roots : real_.coroots;
    const IntMatrix& kappa = side_ == RingSide::equivariant ? real_.coroots : real_.roots;
    for (int s = 0; s < real_.rank(); ++s) {
      reflecting_.push_back(GradedPoly::linear(rho[s]));
      halves_.push_back(reflecting_.back() * Rational(1, 2));
      // x_k -> x_k - kappa_s[k] rho_s
      std::vector<GradedPoly> images;
      for (int k = 0; k < n_; ++k) images.push_back(GradedPoly::variable(k) - reflecting_.back() * Rational(kappa[s][k]));
      refl_images_.push_back(std::move(images));
    }
  }

  static std::shared_ptr<const PolyRing> make(Realization re, RingSide side) {
    return std::make_shared<const PolyRing>(std::move(re), side);
  }

  const Realization& realization() const { return real_; }
  RingSide side() const { return side_; }
  int nvars() const { return n_; }
  int rank() const { return real_.rank(); }
  int generator_weight() const { return side_ == RingSide::equivariant ? 2 : -2; }

  // Linear form negated by s (alpha_s or alpha_s^vee depending on side).
  const GradedPoly& reflecting_form(int s) const { return reflecting_.at(s); }
  // delta_s = reflecting_form / 2
  const GradedPoly& half_form(int s) const { return halves_.at(s); }

  // Ring data of the other side over the dual realization: identical polynomials, negated weights.
  std::shared_ptr<const PolyRing> dual_side() const {
    return make(real_.dual(), side_ == RingSide::equivariant ? RingSide::monodromic : RingSide::equivariant);
  }

  bool same_data(const PolyRing& o) const { return n_ == o.n_ && refl_images_ == o.refl_images_; }
  friend bool operator==(const PolyRing& a, const PolyRing& b) { return a.side_ == b.side_ && a.real_ == b.real_; }

  GradedPoly substitute(const GradedPoly& f, const std::vector<GradedPoly>& images) const {
    GradedPoly r;
    std::vector<std::vector<GradedPoly>> powers(n_);
    auto power = [&](int k, int e) -> const GradedPoly& {
      auto& pw = powers[k];
      if (pw.empty()) pw.push_back(GradedPoly(Rational(1)));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[k]);
      return pw[e];
    };
    for (auto& [m, c] : f.terms()) {
      GradedPoly t(c);
      for (int k = 0; k < n_; ++k) {
        int e = m.exponent(k);
        if (e) t = t * power(k, e);
      }
      r += t;
    }
    return r;
  }

  GradedPoly reflect(int s, const GradedPoly& f) const { return substitute(f, refl_images_.at(s)); }

  // w.f = s_{i1}(s_{i2}(... s_{im}(f)))
  GradedPoly act(const WeylElement& w, const GradedPoly& f) const {
    GradedPoly r = f;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) r = reflect(*it, r);
    return r;
  }

  // Images of the variables under w.
  std::vector<GradedPoly> variable_images(const WeylElement& w) const {
    std::vector<GradedPoly> out;
    for (int k = 0; k < n_; ++k) out.push_back(act(w, GradedPoly::variable(k)));
    return out;
  }

  // Exact division by a linear form, pivoting on its first variable.
  GradedPoly divide_by_linear(GradedPoly f, const GradedPoly& l) const {
    int pivot = -1;
    Rational lc;
    for (int k = 0; k < n_ && pivot < 0; ++k) {
      Rational c = l.coeff(Monomial::variable(k));
      if (!koszul::is_zero(c)) { pivot = k; lc = c; }
    }
    if (pivot < 0) throw DivisionFailure("division by zero linear form");
    GradedPoly q;
    // Largest term in grlex containing the pivot first; the leading term of
    // l is x_pivot, so grlex-leading terms are eliminated one at a time.
    while (!f.is_zero()) {
      const auto& [m, c] = f.terms().back();
      if (m.exponent(pivot) == 0) throw DivisionFailure("linear form does not divide polynomial");
      Monomial qm = m / Monomial::variable(pivot);
      Rational qc = c / lc;
      q += GradedPoly::monomial(qm, qc);
      f -= l.times_monomial(qm, qc);
    }
    return q;
  }

  // (f - s f) / rho_s
  GradedPoly demazure(int s, const GradedPoly& f) const {
    return divide_by_linear(f - reflect(s, f), reflecting_.at(s));
  }

  // f = p + delta_s q with p = (f + s f)/2 and q = demazure(s, f)
  std::pair<GradedPoly, GradedPoly> split_invariant(int s, const GradedPoly& f) const {
    GradedPoly sf = reflect(s, f);
    GradedPoly p = (f + sf) * Rational(1, 2);
    GradedPoly q = divide_by_linear(f - sf, reflecting_.at(s));
    return {p, q};
  }

 private:
  Realization real_;
  RingSide side_;
  int n_ = 0;
  std::vector<GradedPoly> reflecting_, halves_;
  std::vector<std::vector<GradedPoly>> refl_images_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

}  // namespace koszul
