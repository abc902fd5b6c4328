#pragma once

#include <vector>

#include "kanlim/palgebra/module.hpp"

namespace kanlim {

/// Residue of n modulo N in [0, N).
inline int wrap(int n, int N) { return ((n % N) + N) % N; }
inline int koszul_sign(int s) { return (wrap(s, 2) == 0) ? 1 : -1; }

/// Period of a quasi-periodic cochain complex: modules C^0..C^{N-1} and
/// differentials d^n: C^n -> C^{n+1 mod N}. N must be even.
class CyclicComplex {
 public:
  CyclicComplex() = default;
  CyclicComplex(int p, std::vector<FpModule> modules, std::vector<ModuleMap> differentials);

  static CyclicComplex zero(int p, int N);
  /// M in degree n, zero elsewhere.
  static CyclicComplex concentrated(const FpModule& m, int degree, int N);
  /// Z_(p) in degree 0.
  static CyclicComplex unit(int p, int N);
  /// period_for(p) = 2p - 2.
  static int period_for(int p) { return 2 * p - 2; }

  int p() const { return p_; }
  int N() const { return static_cast<int>(modules_.size()); }
  const FpModule& module(int n) const { return modules_[wrap(n, N())]; }
  const ModuleMap& d(int n) const { return differentials_[wrap(n, N())]; }
  const std::vector<FpModule>& modules() const { return modules_; }
  const std::vector<ModuleMap>& differentials() const { return differentials_; }
  bool is_flat() const;
  bool is_zero() const;

  friend bool operator==(const CyclicComplex& a, const CyclicComplex& b);
  friend bool operator!=(const CyclicComplex& a, const CyclicComplex& b) { return !(a == b); }

 private:
  int p_ = 3;
  std::vector<FpModule> modules_;
  std::vector<ModuleMap> differentials_;
};

/// Degreewise maps commuting with the differentials.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(CyclicComplex source, CyclicComplex target, std::vector<ModuleMap> components);

  static ChainMap identity(const CyclicComplex& c);
  static ChainMap zero(const CyclicComplex& source, const CyclicComplex& target);

  const CyclicComplex& source() const { return source_; }
  const CyclicComplex& target() const { return target_; }
  const ModuleMap& at(int n) const { return components_[wrap(n, source_.N())]; }
  const std::vector<ModuleMap>& components() const { return components_; }
  bool is_zero() const;

  ChainMap compose(const ChainMap& g) const;  // this after g
  ChainMap operator*(const ChainMap& g) const { return compose(g); }
  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-() const;
  ChainMap operator-(const ChainMap& o) const { return *this + (-o); }

  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  CyclicComplex source_;
  CyclicComplex target_;
  std::vector<ModuleMap> components_;
};

/// Generators of the Z_(p)-module of all chain maps x -> y (zero maps dropped).
std::vector<ChainMap> chain_map_generators(const CyclicComplex& x, const CyclicComplex& y);

/// Z_(p) --p--> Z_(p) in degrees 0, 1; period 2p - 2.
CyclicComplex moore_complex(int p);
/// M --id--> M in degrees n, n + 1.
CyclicComplex contractible_complex(const FpModule& m, int degree, int N);

/// H^n = Z^n / B^n as a subquotient of the generators of C^n.
Subquotient cohomology_subquotient(const CyclicComplex& c, int n);
FpModule cohomology(const CyclicComplex& c, int n);
std::vector<FpModule> cohomology_all(const CyclicComplex& c);
ModuleMap induced_on_cohomology(const ChainMap& f, int n);
bool is_quasi_iso(const ChainMap& f);
bool is_acyclic(const CyclicComplex& c);

/// Cocycles and coboundaries of one degree with their inclusions
/// B^n -> Z^n -> C^n.
struct CrownData {
  FpModule cocycles;
  ModuleMap cocycle_inclusion;
  FpModule coboundaries;
  ModuleMap coboundary_inclusion;  // into C^n
  ModuleMap boundary_in_cocycles;  // B^n -> Z^n
  ModuleMap onto_coboundaries;     // C^{n-1} -> B^n
};
CrownData crown_data(const CyclicComplex& c, int n);

CyclicComplex shift(const CyclicComplex& c, int k);
ChainMap shift(const ChainMap& f, int k);

struct Cone {
  CyclicComplex cone;
  ChainMap inclusion;   // target -> cone
  ChainMap projection;  // cone -> shift(source, 1)
  /// Degree n: summand 0 is source^{n+1}, summand 1 is target^n.
  std::vector<DirectSum> layout;
};
Cone mapping_cone(const ChainMap& f);

/// Degreewise direct sum of complexes.
struct ComplexSum {
  CyclicComplex complex;
  std::vector<DirectSum> layout;  // per degree
  ChainMap injection(std::size_t k, const std::vector<CyclicComplex>& parts) const;
  ChainMap projection(std::size_t k, const std::vector<CyclicComplex>& parts) const;
};
ComplexSum complex_sum(const std::vector<CyclicComplex>& parts, int p, int N);

struct CyclicTensor {
  CyclicComplex complex;
  CyclicComplex left, right;
  /// Degree n: summand s is left^s (x) right^{n-s}, s = 0..N-1.
  std::vector<DirectSum> layout;
  std::vector<std::vector<TensorProduct>> products;  // [n][s]

  /// Position of e_i (x) f_j from left^s (x) right^t inside degree s+t.
  int position(int s, int t, int i, int j) const;
};
CyclicTensor tensor_cyclic(const CyclicComplex& c, const CyclicComplex& d);
ChainMap tensor_chain_maps(const ChainMap& f, const ChainMap& g, const CyclicTensor& src, const CyclicTensor& tgt);

/// Flat complex P with a quasi-isomorphism q: P -> C.
struct FlatReplacement {
  CyclicComplex complex;
  ChainMap quasi_iso;
};
FlatReplacement flat_replacement(const CyclicComplex& c);
/// The strictly natural lift of a chain map f: C -> D to the replacements.
ChainMap flat_replacement_map(const ChainMap& f, const FlatReplacement& src, const FlatReplacement& tgt);

CyclicComplex derived_tensor(const CyclicComplex& c, const CyclicComplex& d);
/// Cohomology of C (x) D predicted from H(C), H(D); inputs must be flat.
std::vector<FpModule> kunneth_oracle(const CyclicComplex& c, const CyclicComplex& d);

}  // namespace kanlim
