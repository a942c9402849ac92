#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszul/bigraded.hpp"
#include "koszul/coxeter.hpp"
#include "koszul/duality.hpp"
#include "koszul/hecke.hpp"

namespace koszul {

enum class CharacterFlavor { parabolic, whittaker };
enum class Variance { shriek, star };

inline std::string to_string(CharacterFlavor f) { return f == CharacterFlavor::parabolic ? "parabolic" : "whittaker"; }

// Standard object on the stratum of `coset`, shifted by [shift] and twisted by
// (twist_doubled / 2).
struct CharacterTerm {
  WeylElement coset;
  int shift = 0;
  int twist_doubled = 0;
  BigradedDim table() const { return twist(koszul::shift(BigradedDim::singleton(0, 0), shift), twist_doubled); }
  friend bool operator==(const CharacterTerm& a, const CharacterTerm& b) {
    return a.coset == b.coset && a.shift == b.shift && a.twist_doubled == b.twist_doubled;
  }
};

struct ParabolicCharacter {
  ParabolicSubset theta;
  CharacterFlavor flavor = CharacterFlavor::parabolic;
  std::vector<CharacterTerm> terms;

  std::map<WeylElement, BigradedDim> support() const {
    std::map<WeylElement, BigradedDim> s;
    for (auto& t : terms) s[t.coset] += t.table();
    return s;
  }
};

namespace detail {

inline void require_finite_theta(const ParabolicSubset& theta) {
  if (!theta.finite_type) throw NotFiniteType("parabolic subset is not of finite type");
}

inline ParabolicCharacter singleton_character(const ParabolicSubset& theta, CharacterFlavor f, CharacterTerm t) {
  ParabolicCharacter c;
  c.theta = theta;
  c.flavor = f;
  c.terms.push_back(std::move(t));
  return c;
}

}  // namespace detail

// Pushforward of the standard (!) or costandard (*) object on w to the partial
// flag variety: w = uv gives the stratum of v shifted and twisted by -+l(u).
inline ParabolicCharacter push_standard(const WeylGroup& g, const WeylElement& w, const ParabolicSubset& theta,
                                        Variance variance) {
  detail::require_finite_theta(theta);
  auto [u, v] = g.factor_parabolic(w, theta, CosetSide::left);
  int l = u.length();
  int sign = variance == Variance::shriek ? -1 : 1;
  return detail::singleton_character(theta, CharacterFlavor::parabolic, {v, sign * l, sign * l});
}

// Whittaker averaging of the free-monodromic standard on w: twist +l(u)/2, no shift.
inline ParabolicCharacter average_standard(const WeylGroup& g, const WeylElement& w, const ParabolicSubset& theta) {
  detail::require_finite_theta(theta);
  auto [u, v] = g.factor_parabolic(w, theta, CosetSide::left);
  return detail::singleton_character(theta, CharacterFlavor::whittaker, {v, 0, u.length()});
}

// Same for the costandard: twist -l(u)/2.
inline ParabolicCharacter average_costandard(const WeylGroup& g, const WeylElement& w, const ParabolicSubset& theta) {
  detail::require_finite_theta(theta);
  auto [u, v] = g.factor_parabolic(w, theta, CosetSide::left);
  return detail::singleton_character(theta, CharacterFlavor::whittaker, {v, 0, -u.length()});
}

// Averaging kills IC_w exactly when w has a left descent in theta.
inline bool kill_nonminimal(const WeylGroup& g, const WeylElement& w, const ParabolicSubset& theta) {
  for (int s : theta.generators)
    if (g.is_left_descent(w, s)) return true;
  return false;
}

struct ParabolicMultiplicity {
  WeylElement coset;
  int shift = 0;
  long multiplicity = 0;
};

// Multiplicities of IC_v[n](n/2) in the pushforward of IC_w, read off the
// expansion of m_e b_w in the parabolic KL basis of the spherical module.
inline std::vector<ParabolicMultiplicity> parabolic_decomp_multiplicities(KLTable& table, const WeylElement& w,
                                                                          const ParabolicSubset& theta) {
  detail::require_finite_theta(theta);
  ParabolicModule m(table.algebra(), theta, ParabolicFlavor::spherical);
  auto expansion = m.to_kl(m.project(table.kl_basis(w)));
  std::vector<ParabolicMultiplicity> out;
  for (auto& [x, c] : expansion)
    for (auto [e, a] : c.terms()) {
      if (a < 0) throw KLError("negative parabolic multiplicity");
      if (((w.length() - x.length() - e) % 2 + 2) % 2 != 0) throw KLError("parity violation in parabolic decomposition");
      out.push_back({x, e, a});
    }
  return out;
}

// Standards matched by the parabolic-Whittaker duality: identical data on the
// same stratum.
inline std::pair<ParabolicCharacter, ParabolicCharacter> pw_match(const WeylGroup& g, const WeylElement& coset,
                                                                  const ParabolicSubset& theta) {
  detail::require_finite_theta(theta);
  if (!g.is_minimal_representative(coset, theta, CosetSide::left))
    throw std::invalid_argument("not a minimal coset representative: " + word_to_string(coset.word));
  auto par = push_standard(g, coset, theta, Variance::shriek);
  auto whit = average_standard(g, coset, theta);
  return {par, whit};
}

// Standard flag of the Whittaker projective cover over theta. The multiplicity of
// the standard on u twisted by (k/2) is the rank of Hom into the costandard on u,
// which is the averaged costandard: a copy of S on the unit stratum with twist
// (-l(u)/2). So each u contributes (u, l(u)) once per unit-stratum term.
inline std::map<std::pair<WeylElement, int>, int> ptheta_flag(const WeylGroup& g, const ParabolicSubset& theta) {
  detail::require_finite_theta(theta);
  std::map<std::pair<WeylElement, int>, int> flag;
  for (auto& u : g.parabolic_elements(theta)) {
    auto avg = average_costandard(g, u, theta);
    for (auto& t : avg.terms) {
      if (!t.coset.is_identity()) throw std::logic_error("averaged costandard left the unit stratum");
      if (t.shift != 0) throw std::logic_error("averaging shifted degree");
      flag[{u, -t.twist_doubled}] += 1;
    }
  }
  return flag;
}

}  // namespace koszul
