// The SL(2) picture: Hom tables on both sides and the regrading that matches them.
#include <iostream>

#include "koszul/koszul.hpp"

using namespace koszul;

int main() {
  Realization re = Realization::minimal(GeneralizedCartanMatrix(IntMatrix{{2}}));
  RingPtr e = PolyRing::make(re, RingSide::equivariant);
  RingPtr m = e->dual_side();
  for (auto& [x, y] : all_pairs(reduced_words(WeylGroup(re), 1))) {
    auto r = em_check_pair(e, m, x, y, std::nullopt);
    std::cout << word_to_string(x) << " -> " << word_to_string(y) << "  E " << r.equivariant.to_string() << "  M "
              << r.monodromic.to_string() << (r.pass ? "  ok" : "  MISMATCH") << '\n';
  }
  std::cout << "Q[T] up to T^3 regrades to " << regrade(polynomial_truncation(3)).to_string() << '\n';
}
