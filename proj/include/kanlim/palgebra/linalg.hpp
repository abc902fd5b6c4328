#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kanlim/palgebra/pscalar.hpp"

namespace kanlim::linalg {

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, PScalar>>;

SparseVec to_sparse(const PVector& v);
SparseVec column(const PMatrix& m, Eigen::Index j);
std::vector<SparseVec> columns(const PMatrix& m);
PVector to_dense(const SparseVec& v, int size);
PMatrix to_dense(const std::vector<SparseVec>& cols, int rows);

/// v := v - c * w
void axpy(SparseVec& v, const PScalar& c, const SparseVec& w);
const PScalar* find(const SparseVec& v, int index);
SparseVec scaled(const SparseVec& v, const PScalar& c);

/// Column echelon form over Z_(p), obtained by column operations only.
///
/// The surviving pivot columns form a basis of the column span; each has its
/// first nonzero entry in its pivot row, and pivot rows are distinct. Within
/// a row the pivot is the entry of least valuation (ties: fewer nonzeros,
/// then lower column index), so the result is deterministic.
class ColumnEchelon {
 public:
  /// With `track` set, the transforms from the original columns are kept, which
  /// enables kernel() and solve_columns().
  ColumnEchelon(std::vector<SparseVec> cols, int rows, int p, bool track);

  int rows() const { return rows_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<int>& pivot_rows() const { return pivot_rows_; }
  /// Basis of the kernel of the original column matrix (only when tracked).
  const std::vector<SparseVec>& kernel() const { return kernel_; }

  /// Coefficients c with sum_j c_j basis_j = x, or nullopt when x is not in
  /// the Z_(p)-span of the basis.
  std::optional<SparseVec> solve(SparseVec x) const;
  /// Same, but with coefficients on the original columns.
  std::optional<SparseVec> solve_columns(SparseVec x) const;

 private:
  int rows_;
  int p_;
  std::vector<SparseVec> basis_;
  std::vector<int> pivot_rows_;
  std::vector<SparseVec> kernel_;
  std::vector<SparseVec> basis_transforms_;
};

/// Invariant-factor decomposition of the cokernel of a relation matrix
/// (columns are relations among `generators` ambient generators).
///
/// Final generators are ordered canonically: torsion summands with ascending
/// exponents, then free summands.
class CokernelStructure {
 public:
  CokernelStructure(std::vector<SparseVec> relations, int generators, int p);

  int generators() const { return generators_; }
  /// Exponent of each final generator; -1 marks a free summand.
  const std::vector<int>& exponents() const { return exponents_; }
  int free_rank() const;
  std::vector<int> torsion() const;

  /// Coordinates of an ambient vector in the final generators, torsion
  /// coordinates reduced to [0, p^e).
  PVector project(const SparseVec& ambient) const;
  /// Ambient representative of final generator i.
  SparseVec lift(int i) const;

 private:
  struct Step {
    int row;
    SparseVec column;  // already divided by the unit pivot
  };
  int generators_;
  int p_;
  struct Gen {
    bool in_block;  // true: row of the reduced block, false: untouched ambient row
    int index;
  };
  SparseVec reduce(SparseVec v, std::size_t first_step = 0) const;

  std::vector<Step> steps_;
  std::vector<int> block_rows_;  // ambient rows of the reduced block
  std::vector<int> block_slot_;  // ambient row -> index into block_rows_, or -1
  PMatrix transform_;            // P with P M Q = D on the block
  PMatrix transform_inv_;        // P^{-1}
  std::vector<Gen> gens_;
  std::vector<int> exponents_;
};

}  // namespace kanlim::linalg
