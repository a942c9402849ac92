#pragma once

#include "koszul/coxeter.hpp"

namespace fixtures {

inline koszul::IntMatrix a1_cartan() { return {{2}}; }
inline koszul::IntMatrix a2_cartan() { return {{2, -1}, {-1, 2}}; }
inline koszul::IntMatrix b2_cartan() { return {{2, -2}, {-1, 2}}; }
inline koszul::IntMatrix affine_a1_cartan() { return {{2, -2}, {-2, 2}}; }
inline koszul::IntMatrix a3_cartan() { return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}; }

inline koszul::Realization realization(const koszul::IntMatrix& a) {
  return koszul::Realization::minimal(koszul::GeneralizedCartanMatrix(a));
}
inline koszul::WeylGroup group(const koszul::IntMatrix& a) { return koszul::WeylGroup(realization(a)); }

}  // namespace fixtures
