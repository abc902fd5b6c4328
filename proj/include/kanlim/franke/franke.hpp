#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kanlim/derived/derived.hpp"

namespace kanlim {

/// A complex diagram over the crown C_N whose beta_n and zeta_n vertices have
/// cohomology concentrated in degree n (mod N) and whose edges beta_n -> zeta_n
/// are injective on H^n.
class LObject {
 public:
  LObject() = default;
  /// Throws NotInL when a membership condition fails.
  explicit LObject(CxDiagram diagram);
  /// The membership conditions, as a check result (never throws for shape
  /// problems other than a wrong poset).
  static CheckResult check(const CxDiagram& diagram);

  const CxDiagram& diagram() const { return diagram_; }
  int N() const { return diagram_.zero_object().N(); }
  int p() const { return diagram_.zero_object().p(); }
  int beta(int n) const;
  int zeta(int n) const;
  /// H^n of the zeta_n and beta_n vertices.
  const FpModule& z(int n) const { return cohomology_[zeta(n)][wrap(n, N())]; }
  const FpModule& b(int n) const { return cohomology_[beta(n)][wrap(n, N())]; }

 private:
  CxDiagram diagram_;
  std::vector<std::vector<FpModule>> cohomology_;  // [vertex][degree]
};

/// zeta_n = (C^n -> B^{n+1}) in degrees n, n+1; beta_n = B^n in degree n;
/// beta_n -> zeta_n is B^n -> C^n, beta_{n+1} -> zeta_n is the identity of B^{n+1}.
LObject crown_decompose(const CyclicComplex& c);
/// Homotopy colimit over the crown.
CyclicComplex crown_assemble(const LObject& a);

/// Double mapping cylinder of f1: X1 -> Z, f2: X2 -> Z. Degree k is
/// X1^k + X2^k + X1^{k+1} + X2^{k+1} + Z^k with
/// d(a1, a2, b1, b2, c) = (d a1 - b1, d a2 - b2, -d b1, -d b2, f1 b1 + f2 b2 + d c).
struct Cylinder {
  CyclicComplex complex;
  std::vector<DirectSum> layout;
  ChainMap first, second;  // X_i -> cylinder, split injective
  ChainMap projection;     // cylinder -> Z, a quasi-isomorphism
};
Cylinder double_cylinder(const ChainMap& f1, const ChainMap& f2);

/// The crown with every zeta_n replaced by the cylinder of
/// beta_n + beta_{n+1} -> zeta_n. Latching maps become split injections, so
/// tensor products of such crowns stay Reedy cofibrant.
struct CofibrantCrown {
  LObject crown;
  std::vector<Cylinder> cylinders;  // [n], for zeta_n
  CxDiagramMap to_original;         // vertexwise quasi-isomorphism
};
CofibrantCrown cofibrant_crown(const LObject& a);

/// Q(A)^n = H^n of the cone of beta_{n+1} -> zeta_n. The differential is
/// cone -> shift(beta_{n+1}) -> shift(zeta_{n+1}) -> cone_{n+1} on H, with
/// the projection taken with a minus sign so that c -> [(-dc, c)] is a chain
/// map C -> Q(crown_decompose(C)).
struct QComplex {
  CyclicComplex complex;
  std::vector<Cone> cones;            // [n]
  std::vector<Subquotient> classes;   // [n]: H^n(cones[n]) inside cones[n]^n
};
QComplex q_complex(const LObject& a);
/// The same construction on an arbitrary crown diagram, without the
/// membership check (the result need not compute anything meaningful then).
QComplex q_complex(const CxDiagram& crown_diagram);
CyclicComplex Q(const LObject& a);

/// Reconstruction round trip for one complex.
struct RoundTrip {
  LObject crown;
  QComplex q;
  ChainMap comparison;                 // C -> Q(A), c -> [(-dc, c)]
  CyclicComplex q_in_source_basis;     // Q(A) transported along the comparison
  CyclicComplex colimit_in_source_basis;  // strict colimit, in the basis of the zeta_n legs
  bool comparison_iso = false;
  bool q_exact = false;
  bool colimit_exact = false;
  bool hocolim_quasi_iso = false;      // Tot -> strict colimit
  bool exact() const { return comparison_iso && q_exact && colimit_exact && hocolim_quasi_iso; }
};
RoundTrip round_trip(const CyclicComplex& c);

/// One named check of a pipeline run, with the invariants that witness it.
struct ReportCheck {
  std::string anchor;
  std::string name;
  bool passed = true;
  std::vector<std::pair<std::string, std::string>> witness;
};

/// Data shared by the steps of the smash pipeline.
struct SmashContext {
  int p = 3;
  int N = 4;
  CyclicComplex c, c_tilde;
  LObject a, a_tilde;
  CofibrantCrown cof, cof_tilde;   // replacements actually tensored
  FinPoset crown;
  PosetMap pr;
  CxDiagram product;               // A (x) A~ over C_N x C_N, cofibrant models
  std::vector<ModLkan> e_levels;   // strict LKan along pr, per degree
  CxDiagram e;                     // over D_N
  CxDiagram restricted;            // i*E over C_N
  std::vector<CrownData> crown_c, crown_ct;  // [n]

  /// (A (x) A~)_c -> E_d at the chain level; needs pr(c) <= d.
  ChainMap cocone(int c, int d) const;
  int pair(const std::string& a, const std::string& b) const;
};
SmashContext smash_context(const CyclicComplex& c, const CyclicComplex& c_tilde);

/// The rows 0 -> left -> H^n(E_v) -> right -> 0 for v = zeta_n and gamma_n.
struct BzRow {
  FpModule left, middle, right;
  FpModule expected_left, expected_right;
};
/// `result` covers exactness of both rows and the isomorphism of their
/// cokernels. Injectivity of H^n(gamma_n -> zeta_n) is recorded separately:
/// its kernel is Tor of the cohomologies and it is part of L-membership.
struct BzReport {
  int n = 0;
  BzRow zeta, gamma;
  bool vertical_mono = false;
  FpModule vertical_kernel;
  FpModule expected_vertical_kernel;  // sum over s+t = n of Tor(H^s, H~^t)
  bool cokernels_iso = false;
  CheckResult result;
};
BzReport verify_bz(const SmashContext& ctx, int n);

/// Spectral sequence of the slice over zeta_n along p_{gamma_n}^{zeta_n}, at
/// the zeta_n end; E_2 must sit in columns 0 and -1.
struct ButterflyReport {
  int n = 0;
  SpectralSequence sseq;
  CheckResult result;
};
ButterflyReport butterfly_sseq(const SmashContext& ctx, int n);

/// C (x) C~ -> Q(i*E): c (x) c~ goes to the class of
/// (-(dc (x) c~) - (-1)^s (c (x) dc~), c (x) c~) in the cone at degree s+t.
std::vector<ModuleMap> tensor_comparison(const SmashContext& ctx, const QComplex& q, const CyclicTensor& t);

struct PipelineOptions {
  bool auto_flat = true;
  bool cofinality = true;
  bool butterflies = true;
};

struct PipelineReport {
  CyclicComplex c, c_tilde;  // inputs actually used (flat)
  bool replaced = false;
  std::vector<std::string> notes;
  SmashContext context;
  QComplex q;
  CyclicTensor tensor;             // C (x) C~
  std::vector<ModuleMap> comparison;  // tensor -> Q(i*E), per degree
  std::vector<BzReport> bz;
  std::vector<ReportCheck> checks;
  bool passed() const;
};
PipelineReport smash_pipeline(const CyclicComplex& c, const CyclicComplex& c_tilde,
                              const PipelineOptions& options = {});

/// Equatorial embedding of X into its suspension: the V x I diagram with
/// (X <- X -> X) over (0 <- X -> 0). Its cone inclusion, read through the
/// two outer legs (both identified with the suspension the same way), is
/// compared with the diagonal on cohomology. Swapping the arms of V acts by
/// -1 on the suspension, so with these identifications the map is
/// antidiagonal; `antidiagonal` records that outcome.
struct EquatorialReport {
  std::vector<ModuleMap> first, second;  // per degree, H(source) -> H(shift X)
  bool legs_iso = false;
  bool diagonal = false;
  bool antidiagonal = false;
  bool cone_matches = false;
  bool passed() const { return legs_iso && diagonal && cone_matches; }
};
EquatorialReport equatorial_report(const CyclicComplex& x);
bool equatorial_check(const CyclicComplex& x);

/// The two-term case: M --id--> M in degrees s, s+1 for M = C^s and the same
/// for C~^t. Runs the pipeline on them and on (C, C~) and compares the
/// (s+t)-differential with the tensor differential, Koszul sign included.
struct SpecialCaseReport {
  int s = 0, t = 0;
  int koszul = 1;
  ModuleMap special_differential;   // on C^s (x) C~^t, transported to tensor bases
  ModuleMap expected_special;       // (1, (-1)^s 1)
  ModuleMap general_differential;   // Q(i*E) differential on the (s,t) summand, in tensor bases
  ModuleMap expected_general;       // (d^s (x) 1, (-1)^s 1 (x) d~^t)
  bool special_ok = false;
  bool general_ok = false;
  bool passed() const { return special_ok && general_ok; }
};
SpecialCaseReport special_case_differential(const CyclicComplex& c, int s, const CyclicComplex& c_tilde, int t);

/// Z_(3) --3--> Z_(3) in degrees 0, 1 with period 4; only p = 3 is provided.
CyclicComplex moore_example(int p = 3);

}  // namespace kanlim
