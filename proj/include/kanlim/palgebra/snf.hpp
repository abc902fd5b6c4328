#pragma once

#include <vector>

#include "kanlim/palgebra/pscalar.hpp"

namespace kanlim {

/// Smith normal form over Z_(p): P * M * Q = D with P, Q invertible over Z_(p).
///
/// Pivoting always takes an entry of least p-adic valuation in the remaining
/// block, ties broken by row-major position, and normalises it to p^k. The
/// diagonal therefore comes out with nondecreasing valuations.
struct SmithForm {
  PMatrix D;
  PMatrix P, P_inv;
  PMatrix Q, Q_inv;
  int rank = 0;

  /// M = U * D * V.
  const PMatrix& U() const { return P_inv; }
  const PMatrix& V() const { return Q_inv; }
  /// Valuation of each nonzero invariant factor, in diagonal order.
  std::vector<int> exponents(int p) const;
};

/// Throws InvalidScalar if any entry is not p-local.
SmithForm plocal_snf(const PMatrix& m, int p, bool with_transforms = true);

void require_plocal(const PMatrix& m, int p);

}  // namespace kanlim
