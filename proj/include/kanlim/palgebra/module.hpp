#pragma once

#include <string>
#include <vector>

#include "kanlim/palgebra/linalg.hpp"
#include "kanlim/palgebra/pscalar.hpp"

namespace kanlim {

/// Finitely generated Z_(p)-module Z_(p)^r + sum_i Z/p^{e_i}, kept in canonical
/// form. Generators are ordered torsion first (ascending exponents), then free.
class FpModule {
 public:
  FpModule() = default;
  FpModule(int p, int free_rank, std::vector<int> torsion = {});

  static FpModule zero(int p) { return FpModule(p, 0); }
  static FpModule free(int p, int rank) { return FpModule(p, rank); }
  static FpModule cyclic(int p, int e) { return FpModule(p, 0, {e}); }

  int p() const { return p_; }
  int free_rank() const { return free_rank_; }
  const std::vector<int>& torsion() const { return torsion_; }
  int num_generators() const { return free_rank_ + static_cast<int>(torsion_.size()); }
  bool is_zero() const { return num_generators() == 0; }
  bool is_flat() const { return torsion_.empty(); }

  /// Exponent of generator i, or -1 if it is free.
  int exponent(int i) const;
  /// Columns p^{e_i} e_i for each torsion generator.
  std::vector<linalg::SparseVec> relations() const;
  /// Reduce torsion coordinates into [0, p^e).
  PVector normalize(PVector v) const;
  void check_element(const PVector& v) const;

  std::string to_string() const;

  friend bool operator==(const FpModule& a, const FpModule& b) {
    return a.p_ == b.p_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  friend bool operator!=(const FpModule& a, const FpModule& b) { return !(a == b); }

 private:
  int p_ = 3;
  int free_rank_ = 0;
  std::vector<int> torsion_;
};

std::ostream& operator<<(std::ostream& os, const FpModule& m);

/// Homomorphism between canonical modules, stored as a matrix on generators.
/// The constructor rejects ill-defined matrices and reduces entries landing in
/// torsion generators, so two maps are equal iff their matrices are equal.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(FpModule source, FpModule target, PMatrix matrix);

  static ModuleMap zero(const FpModule& source, const FpModule& target);
  static ModuleMap identity(const FpModule& m);
  /// Multiplication by a scalar on M.
  static ModuleMap scalar(const FpModule& m, const PScalar& c);

  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const PMatrix& matrix() const { return matrix_; }
  int p() const { return source_.p(); }

  PVector apply(const PVector& x) const;
  bool is_zero() const { return kanlim::is_zero(matrix_); }
  bool is_mono() const;
  bool is_epi() const;
  bool is_iso() const { return is_mono() && is_epi(); }

  /// this after g
  ModuleMap compose(const ModuleMap& g) const;
  ModuleMap operator*(const ModuleMap& g) const { return compose(g); }
  ModuleMap operator+(const ModuleMap& o) const;
  ModuleMap operator-(const ModuleMap& o) const;
  ModuleMap operator-() const;
  ModuleMap scaled(const PScalar& c) const;

  friend bool operator==(const ModuleMap& a, const ModuleMap& b);
  friend bool operator!=(const ModuleMap& a, const ModuleMap& b) { return !(a == b); }

 private:
  FpModule source_;
  FpModule target_;
  PMatrix matrix_;
};

/// Iso class of Z_(p)^generators / span(relation columns).
FpModule canonical_form(int generators, const PMatrix& relations, int p);

/// A subquotient span(G) / span(R) of a free ambient module Z_(p)^n, where
/// span(R) must lie inside span(G). Carries a canonical form and the ambient
/// representatives of its generators.
class Subquotient {
 public:
  Subquotient(std::vector<linalg::SparseVec> gens, const std::vector<linalg::SparseVec>& rels,
              int ambient, int p);

  const FpModule& module() const { return module_; }
  int ambient() const { return ambient_; }
  /// ambient x generators; column i represents generator i.
  const PMatrix& embedding() const { return embedding_; }
  linalg::SparseVec representative(int i) const;
  /// Coordinates of an ambient vector that lies in span(G). Throws
  /// MapNotWellDefined otherwise.
  PVector coordinates(const linalg::SparseVec& x) const;
  PVector coordinates(const PVector& x) const { return coordinates(linalg::to_sparse(x)); }
  bool contains(const linalg::SparseVec& x) const;

 private:
  int ambient_;
  int p_;
  FpModule module_;
  linalg::ColumnEchelon span_;
  linalg::CokernelStructure quotient_;
  PMatrix embedding_;
};

/// Matrix induced on subquotients by an ambient matrix F (target ambient x
/// source ambient).
ModuleMap induced_map(const Subquotient& source, const Subquotient& target, const PMatrix& ambient_map);

/// Columns of a matrix together with the relation columns of a module.
std::vector<linalg::SparseVec> with_relations(const PMatrix& m, const FpModule& target);
/// Top `rows` coordinates of the kernel of the column matrix `cols`.
std::vector<linalg::SparseVec> kernel_top(const std::vector<linalg::SparseVec>& cols, int total_rows,
                                          int top, int p);

struct Subquotients {
  FpModule kernel;
  ModuleMap kernel_inclusion;
  FpModule image;
  ModuleMap image_inclusion;
  ModuleMap corestriction;  // source -> image
  FpModule cokernel;
  ModuleMap cokernel_projection;
};

Subquotients subquotients(const ModuleMap& f);
ModuleMap kernel_inclusion(const ModuleMap& f);
ModuleMap cokernel_projection(const ModuleMap& f);

/// Given g with image containing the image of f, a map h with g h = f.
/// Throws MapNotWellDefined when no lift exists.
ModuleMap lift_through(const ModuleMap& f, const ModuleMap& g);
/// Given q epi with ker q contained in ker f, the map h with h q = f.
ModuleMap descend_through(const ModuleMap& f, const ModuleMap& q);

/// Direct sum with positions of each summand's generators in the canonical
/// generator order.
struct DirectSum {
  FpModule module;
  std::vector<FpModule> summands;
  std::vector<std::vector<int>> index;

  ModuleMap injection(std::size_t k) const;
  ModuleMap projection(std::size_t k) const;
};

DirectSum direct_sum(const std::vector<FpModule>& ms, int p);
/// Matrix of the map between two sums given by blocks[i][j]: src summand j ->
/// tgt summand i (empty blocks are zero).
ModuleMap block_map(const DirectSum& src, const DirectSum& tgt,
                    const std::vector<std::vector<ModuleMap>>& blocks);

struct TensorProduct {
  FpModule module;
  FpModule left, right;
  /// index[i][j]: position of generator e_i (x) f_j, or -1 when it vanishes.
  std::vector<std::vector<int>> index;
};

TensorProduct tensor(const FpModule& m, const FpModule& n);
FpModule tor(const FpModule& m, const FpModule& n);
struct TensorAndTor {
  FpModule tensor;
  FpModule tor;
};
TensorAndTor tensor_and_tor(const FpModule& m, const FpModule& n);

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g, const TensorProduct& src,
                      const TensorProduct& tgt);
ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g);

}  // namespace kanlim
