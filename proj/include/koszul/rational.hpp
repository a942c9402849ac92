#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace koszul {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace koszul
