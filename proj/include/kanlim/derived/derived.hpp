#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kanlim/diagrams/diagram.hpp"

namespace kanlim {

/// (P~X)_{d'} = sum over d <= d' of X_d; edges include summands.
struct PTilde {
  ModDiagram diagram;
  ModDiagramMap counit;          // P~X -> X
  std::vector<std::vector<int>> summands;  // per vertex: the d's, ascending
  std::vector<DirectSum> sums;             // per vertex
};
PTilde ptilde(const ModDiagram& x);
ModDiagramMap ptilde(const ModDiagramMap& phi, const PTilde& src, const PTilde& tgt);

/// R~X = kernel of the counit, with its inclusion into P~X.
struct RTilde {
  ModDiagram diagram;
  ModDiagramMap inclusion;
};
RTilde rtilde(const ModDiagram& x, const PTilde& p);
RTilde rtilde(const ModDiagram& x);
ModDiagramMap rtilde(const ModDiagramMap& phi, const PTilde& psrc, const RTilde& src, const PTilde& ptgt,
                     const RTilde& tgt);

/// D_k = P~ R~^k X for k = 0..height; boundary[k]: D_{k+1} -> D_k.
struct Resolution {
  std::vector<ModDiagram> stages;
  std::vector<ModDiagramMap> boundary;
  ModDiagramMap augmentation;  // D_0 -> X
  std::vector<ModDiagram> kernels;  // R~^k X, k = 0..height+1
  std::vector<PTilde> ptildes;
  std::vector<RTilde> rtildes;
};
Resolution resolve(const ModDiagram& x);
/// Stagewise maps D_k(X) -> D_k(Y) induced by phi.
std::vector<ModDiagramMap> resolve(const ModDiagramMap& phi, const Resolution& src, const Resolution& tgt);

/// Homology of A --in--> B --out--> C at B.
Subquotient homology_subquotient(const ModuleMap& in, const ModuleMap& out);

/// L_s LKan_f X, computed from the resolution.
ModDiagram derived_lkan(const PosetMap& f, const ModDiagram& x, int s);
FpModule derived_colim(const ModDiagram& x, int s);
/// The one-point poset and the map to it.
FinPoset point();
PosetMap to_point(const FinPoset& c);

/// LKan_f applied to the levelwise resolution of a complex diagram:
/// cells[k][n] = LKan_f (degree n of stage k).
struct KanDoubleComplex {
  int p = 3;
  int N = 4;
  int columns = 0;
  FinPoset target;
  std::vector<std::vector<ModDiagram>> cells;
  std::vector<std::vector<ModDiagramMap>> vertical;    // [k][n]: cells[k][n] -> cells[k][n+1]
  std::vector<std::vector<ModDiagramMap>> horizontal;  // [k][n]: cells[k+1][n] -> cells[k][n]
  // Stage 0 data, kept for the maps into and out of the totalization.
  std::vector<PTilde> base;               // [n]: P~ of level n
  std::vector<ModLkan> base_lkan;         // [n]: LKan_f of stage 0
  std::vector<ModLkan> strict_lkan;       // [n]: LKan_f of level n itself
  std::vector<ModDiagramMap> augmentation;  // [n]: base_lkan -> strict_lkan
  std::vector<ModDiagramMap> strict_differential;  // [n]: strict level n -> n+1

  CyclicComplex column(int k, int vertex) const;
  ChainMap horizontal_map(int k, int vertex) const;  // column k+1 -> column k
};
KanDoubleComplex kan_double_complex(const PosetMap& f, const CxDiagram& x);

/// Tot^m = sum_k column_k^{m+k}, d = d_vert + (-1)^m d_horiz.
struct Totalization {
  CyclicComplex complex;
  std::vector<DirectSum> layout;  // [m]: summand k is column k in degree m+k
};
Totalization totalize(const KanDoubleComplex& dc, int vertex);

/// Strict LKan_f X at a vertex, and the augmentation Tot -> strict LKan
/// (a quasi-isomorphism when X is Reedy cofibrant).
CyclicComplex strict_vertex(const KanDoubleComplex& dc, int vertex);
ChainMap tot_to_strict(const KanDoubleComplex& dc, const Totalization& tot, int vertex);
/// X_c -> Tot at `vertex` through the c-summand of (P~X)_c; needs f(c) <= vertex.
ChainMap tot_leg(const KanDoubleComplex& dc, const Totalization& tot, const CxDiagram& x, int c, int vertex);

/// Tot at a -> Tot at b along the Hasse edge a -> b of the target.
ChainMap tot_edge(const KanDoubleComplex& dc, const Totalization& from, const Totalization& to, int a, int b);

CxDiagram holkan_cx(const PosetMap& f, const CxDiagram& x);
CyclicComplex hocolim_cx(const CxDiagram& x);

/// hocolim over V of (0 <- X -> Y), and the cone inclusion Y -> Cone(f) as
/// the (0,1) < (1,1) edge of hoLKan along V -> I x I.
CyclicComplex diagram_cone(const ChainMap& f);
ChainMap cone_map(const ChainMap& f);
/// V-shaped diagram (0 <- X --f--> Y).
CxDiagram cone_diagram(const ChainMap& f);

/// f box g: the edge of hoLKan along p_V of the square arrow(f) (x) arrow(g).
ChainMap derived_box(const ChainMap& f, const ChainMap& g);

/// Spectral sequence of the column filtration of Tot at one target vertex.
/// Cells are indexed by (s, t) with s = -k in [-(columns-1), 0] and t in
/// [0, N); the abutment is F_{s+t} = H^{s+t} of the totalization.
struct SseqPage {
  int r = 1;
  std::map<std::pair<int, int>, FpModule> cells;
  const FpModule& at(int s, int t) const { return cells.at({s, t}); }
};
struct SpectralSequence {
  int vertex = 0;
  int columns = 0;
  int N = 4;
  Totalization tot;
  std::vector<SseqPage> pages;  // pages[r - 1] = E_r for r = 1..columns+1
  SseqPage e2_from_d1;          // homology of (E_1, d_1)
  SseqPage e_infinity;          // associated graded of H(Tot)
  const SseqPage& page(int r) const { return pages.at(r - 1); }
};
SpectralSequence spectral_sequence(const KanDoubleComplex& dc, int vertex);
std::vector<SpectralSequence> sseq_pages(const PosetMap& f, const CxDiagram& x);

/// Structured outcome of a comparison check.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    passed = false;
    notes.push_back(why);
  }
};

/// Isomorphism invariants of a map on cohomology: (source, target, kernel,
/// image, cokernel) canonical forms.
struct MapInvariants {
  FpModule source, target, kernel, image, cokernel;
  friend bool operator==(const MapInvariants&, const MapInvariants&) = default;
};
MapInvariants invariants(const ModuleMap& f);

/// Compares the (d <= d') edge of hoLKan_f X with hoLKan along p_d^{d'} of the
/// slice restriction (exactly) and with hoLKan along p_B of j_B^* X (up to
/// isomorphism on cohomology).
CheckResult edge_check(const PosetMap& f, const CxDiagram& x, int d, int d_prime);
/// Same, reusing a precomputed hoLKan_f X.
CheckResult edge_check(const PosetMap& f, const CxDiagram& x, const CxDiagram& holkan, int d, int d_prime);

/// Degreewise cohomology table of each vertex.
std::vector<std::vector<FpModule>> cohomology_table(const CxDiagram& x);

}  // namespace kanlim
