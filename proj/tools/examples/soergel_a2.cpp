// Build B_w for A2, split a Bott-Samelson bimodule and compare with the Hecke algebra.
#include <iostream>

#include "koszul/koszul.hpp"

using namespace koszul;

int main() {
  Realization re = Realization::minimal(GeneralizedCartanMatrix({{2, -1}, {-1, 2}}));
  RingPtr ring = PolyRing::make(re, RingSide::equivariant);
  SoergelLibrary lib(ring);
  WeylGroup g(re);

  Bimodule bw = lib.indecomposable(g.element({0, 1, 0}));
  std::cout << "rank of B_010: " << bw.graded_rank() << '\n';

  Word word{0, 1, 0, 1};
  Decomposition d = lib.decompose_word(word);
  for (auto& e : d.entries)
    std::cout << "  B_" << e.label.to_string() << "[" << e.shift << "] x" << e.multiplicity << '\n';

  HeckeAlgebra h(g);
  KLTable t{h};
  HeckeElement kl = t.to_kl(h.bott_samelson(word));
  for (auto& [w, m] : kl.terms) std::cout << "  b_" << w.to_string() << " : " << m << '\n';
}
