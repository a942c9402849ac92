#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace koszul {

// Integer Laurent polynomial in v.
class Laurent {
 public:
  Laurent() = default;
  Laurent(std::int64_t c) { if (c != 0) terms_[0] = c; }  // NOLINT

  static Laurent monomial(int exp, std::int64_t c = 1) {
    Laurent r;
    if (c != 0) r.terms_[exp] = c;
    return r;
  }
  static Laurent v() { return monomial(1); }
  static Laurent vinv() { return monomial(-1); }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }
  void add_term(int exp, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[exp];
    slot = checked_add(slot, c);
    if (slot == 0) terms_.erase(exp);
  }

  int min_degree() const {
    if (terms_.empty()) throw std::logic_error("degree of zero Laurent polynomial");
    return terms_.begin()->first;
  }
  int max_degree() const {
    if (terms_.empty()) throw std::logic_error("degree of zero Laurent polynomial");
    return terms_.rbegin()->first;
  }

  // v -> v^{-1}
  Laurent bar() const {
    Laurent r;
    for (auto [e, c] : terms_) r.terms_[-e] = c;
    return r;
  }
  Laurent shifted(int k) const {
    Laurent r;
    for (auto [e, c] : terms_) r.terms_[e + k] = c;
    return r;
  }
  // p(v) -> p(v^k)
  Laurent substitute_power(int k) const {
    Laurent r;
    for (auto [e, c] : terms_) r.add_term(e * k, c);
    return r;
  }
  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto [e, c] : terms_) s = checked_add(s, c);
    return s;
  }
  bool is_bar_invariant() const { return bar() == *this; }

  Laurent& operator+=(const Laurent& o) {
    for (auto [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto [e, c] : o.terms_) add_term(e, checked_mul(c, -1));
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) { return Laurent() - a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [e1, c1] : a.terms_)
      for (auto [e2, c2] : b.terms_) r.add_term(e1 + e2, checked_mul(c1, c2));
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  // "v^-1 + 2 + v^3"
  std::string to_string(const std::string& var = "v") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [e, c] : terms_) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
    return r;
  }

 private:
  std::map<int, std::int64_t> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << p.to_string(); }

// Quantum integer [n] = v^{n-1} + v^{n-3} + ... + v^{1-n}.
inline Laurent quantum_integer(int n) {
  Laurent r;
  for (int k = 0; k < n; ++k) r.add_term(n - 1 - 2 * k, 1);
  return r;
}

}  // namespace koszul
