#pragma once

#include <vector>

#include "kanlim/complexes/complex.hpp"
#include "kanlim/posets/poset.hpp"

namespace kanlim {

inline ModuleMap identity_on(const FpModule& m) { return ModuleMap::identity(m); }
inline ChainMap identity_on(const CyclicComplex& c) { return ChainMap::identity(c); }
inline ModuleMap zero_between(const FpModule& a, const FpModule& b) { return ModuleMap::zero(a, b); }
inline ChainMap zero_between(const CyclicComplex& a, const CyclicComplex& b) { return ChainMap::zero(a, b); }

enum class Validate { yes, no };

/// Functor from a finite poset, stored as vertex objects and maps on the
/// Hasse edges (aligned with shape().hasse()).
template <class Obj, class Mor>
class Diagram {
 public:
  using Object = Obj;
  using Morphism = Mor;

  Diagram() = default;
  /// `zero` is the zero object of the ambient category (fixes p, and N for
  /// complexes). Throws ShapeMismatch on malformed data and
  /// MapNotWellDefined when two paths between the same vertices disagree.
  Diagram(FinPoset shape, Obj zero, std::vector<Obj> vertices, std::vector<Mor> edges,
          Validate check = Validate::yes);

  static Diagram zero(const FinPoset& shape, const Obj& zero);
  static Diagram constant(const FinPoset& shape, const Obj& value, const Obj& zero);

  const FinPoset& shape() const { return shape_; }
  const Obj& zero_object() const { return zero_; }
  const Obj& at(int x) const { return vertices_.at(x); }
  const std::vector<Obj>& vertices() const { return vertices_; }
  const std::vector<Mor>& edges() const { return edges_; }
  const Mor& edge(int k) const { return edges_.at(k); }
  /// Index of the Hasse edge a -> b, or -1.
  int edge_index(int a, int b) const;
  /// X(x <= y) along any Hasse path.
  Mor map(int x, int y) const;
  bool is_zero() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.shape_ == b.shape_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  void check_functorial() const;

  FinPoset shape_;
  Obj zero_;
  std::vector<Obj> vertices_;
  std::vector<Mor> edges_;
  std::vector<std::vector<std::pair<int, int>>> out_;  // per vertex: (target, edge index)
};

/// Natural transformation between diagrams of the same shape.
template <class Obj, class Mor>
class DiagramMap {
 public:
  using D = Diagram<Obj, Mor>;
  DiagramMap() = default;
  /// Throws MapNotWellDefined when a naturality square fails.
  DiagramMap(D source, D target, std::vector<Mor> components, Validate check = Validate::yes);
  static DiagramMap identity(const D& x);
  static DiagramMap zero(const D& x, const D& y);

  const D& source() const { return source_; }
  const D& target() const { return target_; }
  const Mor& at(int x) const { return components_.at(x); }
  const std::vector<Mor>& components() const { return components_; }

  DiagramMap compose(const DiagramMap& g) const;  // this after g
  DiagramMap operator*(const DiagramMap& g) const { return compose(g); }
  DiagramMap operator+(const DiagramMap& o) const;
  DiagramMap operator-() const;
  bool is_zero() const;

  friend bool operator==(const DiagramMap& a, const DiagramMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
  }

 private:
  D source_;
  D target_;
  std::vector<Mor> components_;
};

using ModDiagram = Diagram<FpModule, ModuleMap>;
using CxDiagram = Diagram<CyclicComplex, ChainMap>;
using ModDiagramMap = DiagramMap<FpModule, ModuleMap>;
using CxDiagramMap = DiagramMap<CyclicComplex, ChainMap>;

ModDiagram mod_diagram(const FinPoset& shape, int p, std::vector<FpModule> vertices, std::vector<ModuleMap> edges);
CxDiagram cx_diagram(const FinPoset& shape, int p, int N, std::vector<CyclicComplex> vertices,
                     std::vector<ChainMap> edges);

/// Degree n of a complex diagram and its differential d^n: X^n -> X^{n+1}.
ModDiagram level(const CxDiagram& x, int n);
ModDiagramMap level_differential(const CxDiagram& x, int n);
ModDiagramMap level(const CxDiagramMap& f, int n);
/// Inverse of `level`: levels[n] with differentials d[n]: levels[n] -> levels[n+1].
CxDiagram assemble(const std::vector<ModDiagram>& levels, const std::vector<ModDiagramMap>& d, int p);
CxDiagramMap assemble(const CxDiagram& source, const CxDiagram& target, const std::vector<ModDiagramMap>& levels);

/// f*X, with (f*X)_c = X_{f(c)}.
ModDiagram pullback(const PosetMap& f, const ModDiagram& x);
CxDiagram pullback(const PosetMap& f, const CxDiagram& x);
ModDiagramMap pullback(const PosetMap& f, const ModDiagramMap& phi);
CxDiagramMap pullback(const PosetMap& f, const CxDiagramMap& phi);
/// Restriction to a subposet.
ModDiagram restrict(const ModDiagram& x, const SubPoset& s);
CxDiagram restrict(const CxDiagram& x, const SubPoset& s);

/// Colimit of X restricted to `elements`, as a quotient of the sum of the
/// vertex modules.
struct ModColimit {
  FpModule module;
  std::vector<int> elements;
  DirectSum sum;
  ModuleMap projection;  // sum -> module
  ModuleMap cocone(int k) const { return projection * sum.injection(k); }
};
ModColimit colimit_over(const ModDiagram& x, const std::vector<int>& elements);
ModColimit strict_colim(const ModDiagram& x);
/// Map of colimits induced by components phi_c and an inclusion of index sets
/// (every element of `source` must occur in `target`).
ModuleMap colimit_map(const ModColimit& source, const ModColimit& target, const ModDiagramMap& phi);

struct CxColimit {
  CyclicComplex complex;
  std::vector<ChainMap> cocone;  // per element of the shape
};
CxColimit strict_colim(const CxDiagram& x);

/// Strict left Kan extension: vertex d is the colimit over f^{-1}(<= d).
ModDiagram strict_lkan(const PosetMap& f, const ModDiagram& x);
ModDiagramMap strict_lkan(const PosetMap& f, const ModDiagramMap& phi);
CxDiagram strict_lkan(const PosetMap& f, const CxDiagram& x);
CxDiagramMap strict_lkan(const PosetMap& f, const CxDiagramMap& phi);
/// Strict LKan together with the colimit presentation at each target vertex,
/// so maps between extensions can be computed without rebuilding colimits.
struct ModLkan {
  ModDiagram diagram;
  std::vector<ModColimit> colimits;  // per target element
};
ModLkan lkan_with_colimits(const PosetMap& f, const ModDiagram& x);
ModDiagramMap lkan_map(const ModLkan& src, const ModLkan& tgt, const ModDiagramMap& phi);
/// Unit X -> f* LKan_f X.
ModDiagramMap lkan_unit(const PosetMap& f, const ModDiagram& x);

/// Latching map colim_{c' < c} X_{c'} -> X_c.
ModuleMap latching_map(const ModDiagram& x, int c);
bool is_reedy_cofibrant(const ModDiagram& x);
/// Degreewise.
bool is_reedy_cofibrant(const CxDiagram& x);

/// (X (x) U)_{(a,b)} = X_a (x) U_b over the product poset.
ModDiagram diagram_tensor(const ModDiagram& x, const ModDiagram& u);
CxDiagram diagram_tensor(const CxDiagram& x, const CxDiagram& u);
/// Tensor of two diagram maps, landing in diagram_tensor of the targets.
CxDiagramMap diagram_tensor(const CxDiagramMap& f, const CxDiagramMap& g);

/// Diagram over I given by a single map.
ModDiagram arrow_diagram(const ModuleMap& f);
CxDiagram arrow_diagram(const ChainMap& f);
/// Chain map of the Hasse edge a -> b (a <= b required).
inline ChainMap edge_map(const CxDiagram& x, int a, int b) { return x.map(a, b); }

}  // namespace kanlim
