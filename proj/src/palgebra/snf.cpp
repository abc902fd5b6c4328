#include "kanlim/palgebra/snf.hpp"

#include <utility>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

void require_plocal(const PMatrix& m, int p) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_plocal(p))
        throw InvalidScalar("entry " + m(i, j).to_string() + " is not " + std::to_string(p) + "-local");
}

std::vector<int> SmithForm::exponents(int p) const {
  std::vector<int> out;
  for (int k = 0; k < rank; ++k) out.push_back(D(k, k).valuation(p));
  return out;
}

SmithForm plocal_snf(const PMatrix& m, int p, bool with_transforms) {
  require_plocal(m, p);
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SmithForm f;
  f.D = m;
  PMatrix& a = f.D;
  if (with_transforms) {
    f.P = identity_matrix(rows);
    f.P_inv = identity_matrix(rows);
    f.Q = identity_matrix(cols);
    f.Q_inv = identity_matrix(cols);
  }

  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index k = 0; k < steps; ++k) {
    int best = PScalar::kInfiniteValuation;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = k; i < rows && best > 0; ++i) {
      for (Eigen::Index j = k; j < cols; ++j) {
        if (a(i, j).is_zero()) continue;
        int v = a(i, j).valuation(p);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (bi < 0) break;
    f.rank = static_cast<int>(k) + 1;

    if (bi != k) {
      a.row(k).swap(a.row(bi));
      if (with_transforms) {
        f.P.row(k).swap(f.P.row(bi));
        f.P_inv.col(k).swap(f.P_inv.col(bi));
      }
    }
    if (bj != k) {
      a.col(k).swap(a.col(bj));
      if (with_transforms) {
        f.Q.col(k).swap(f.Q.col(bj));
        f.Q_inv.row(k).swap(f.Q_inv.row(bj));
      }
    }

    const PScalar pivot_power = prime_power(p, best);
    const PScalar unit = a(k, k) / pivot_power;
    if (!unit.is_one()) {
      const PScalar inv = PScalar(1) / unit;
      for (Eigen::Index j = k; j < cols; ++j)
        if (!a(k, j).is_zero()) a(k, j) *= inv;
      if (with_transforms) {
        for (Eigen::Index j = 0; j < rows; ++j)
          if (!f.P(k, j).is_zero()) f.P(k, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i)
          if (!f.P_inv(i, k).is_zero()) f.P_inv(i, k) *= unit;
      }
    }

    std::vector<Eigen::Index> row_nz;
    for (Eigen::Index j = k; j < cols; ++j)
      if (!a(k, j).is_zero()) row_nz.push_back(j);

    // Clear column k below the pivot with row operations.
    for (Eigen::Index i = k + 1; i < rows; ++i) {
      if (a(i, k).is_zero()) continue;
      const PScalar c = a(i, k) / pivot_power;
      for (Eigen::Index j : row_nz) a(i, j) -= c * a(k, j);
      if (with_transforms) {
        for (Eigen::Index j = 0; j < rows; ++j)
          if (!f.P(k, j).is_zero()) f.P(i, j) -= c * f.P(k, j);
        for (Eigen::Index r = 0; r < rows; ++r)
          if (!f.P_inv(r, i).is_zero()) f.P_inv(r, k) += c * f.P_inv(r, i);
      }
    }
    // Clear row k right of the pivot with column operations.
    for (Eigen::Index j : row_nz) {
      if (j == k) continue;
      const PScalar c = a(k, j) / pivot_power;
      a(k, j) = PScalar(0);
      if (with_transforms) {
        for (Eigen::Index r = 0; r < cols; ++r)
          if (!f.Q(r, k).is_zero()) f.Q(r, j) -= c * f.Q(r, k);
        for (Eigen::Index c2 = 0; c2 < cols; ++c2)
          if (!f.Q_inv(j, c2).is_zero()) f.Q_inv(k, c2) += c * f.Q_inv(j, c2);
      }
    }
  }
  return f;
}

}  // namespace kanlim
