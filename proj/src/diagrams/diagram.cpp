#include "kanlim/diagrams/diagram.hpp"

#include <algorithm>
#include <functional>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

template <class Obj, class Mor>
Diagram<Obj, Mor>::Diagram(FinPoset shape, Obj zero, std::vector<Obj> vertices, std::vector<Mor> edges,
                           Validate check)
    : shape_(std::move(shape)), zero_(std::move(zero)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (static_cast<int>(vertices_.size()) != shape_.size())
    throw ShapeMismatch("diagram needs one vertex per poset element");
  if (edges_.size() != shape_.hasse().size()) throw ShapeMismatch("diagram needs one map per Hasse edge");
  out_.assign(shape_.size(), {});
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    auto [a, b] = shape_.hasse()[k];
    if (check == Validate::yes && (!(edges_[k].source() == vertices_[a]) || !(edges_[k].target() == vertices_[b])))
      throw ShapeMismatch("edge " + shape_.name(a) + " -> " + shape_.name(b) + " does not match its vertices");
    out_[a].emplace_back(b, static_cast<int>(k));
  }
  if (check == Validate::yes) check_functorial();
}

template <class Obj, class Mor>
Diagram<Obj, Mor> Diagram<Obj, Mor>::zero(const FinPoset& shape, const Obj& zero) {
  std::vector<Mor> edges(shape.hasse().size(), zero_between(zero, zero));
  return Diagram(shape, zero, std::vector<Obj>(static_cast<std::size_t>(shape.size()), zero), std::move(edges),
                 Validate::no);
}

template <class Obj, class Mor>
Diagram<Obj, Mor> Diagram<Obj, Mor>::constant(const FinPoset& shape, const Obj& value, const Obj& zero) {
  std::vector<Mor> edges(shape.hasse().size(), identity_on(value));
  return Diagram(shape, zero, std::vector<Obj>(static_cast<std::size_t>(shape.size()), value), std::move(edges),
                 Validate::no);
}

template <class Obj, class Mor>
int Diagram<Obj, Mor>::edge_index(int a, int b) const {
  for (auto [t, k] : out_.at(a))
    if (t == b) return k;
  return -1;
}

template <class Obj, class Mor>
Mor Diagram<Obj, Mor>::map(int x, int y) const {
  if (!shape_.leq(x, y)) throw NotMonotone(shape_.name(x) + " is not below " + shape_.name(y));
  Mor result = identity_on(vertices_[x]);
  int cur = x;
  while (cur != y) {
    for (auto [t, k] : out_[cur]) {
      if (shape_.leq(t, y)) {
        result = edges_[k] * result;
        cur = t;
        break;
      }
    }
  }
  return result;
}

template <class Obj, class Mor>
bool Diagram<Obj, Mor>::is_zero() const {
  for (const auto& v : vertices_)
    if (!v.is_zero()) return false;
  return true;
}

template <class Obj, class Mor>
void Diagram<Obj, Mor>::check_functorial() const {
  const int n = shape_.size();
  for (int x = 0; x < n; ++x) {
    std::vector<Mor> from(static_cast<std::size_t>(n));
    std::vector<char> known(static_cast<std::size_t>(n), 0);
    from[x] = identity_on(vertices_[x]);
    known[x] = 1;
    for (int y : shape_.linear_extension()) {
      if (!shape_.less(x, y)) continue;
      for (int z : shape_.lower_covers(y)) {
        if (!shape_.leq(x, z)) continue;
        Mor candidate = edges_[edge_index(z, y)] * from[z];
        if (!known[y]) {
          from[y] = std::move(candidate);
          known[y] = 1;
        } else if (!(from[y] == candidate)) {
          throw MapNotWellDefined("paths from " + shape_.name(x) + " to " + shape_.name(y) + " disagree");
        }
      }
    }
  }
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor>::DiagramMap(D source, D target, std::vector<Mor> components, Validate check)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (check == Validate::no) return;
  if (!(source_.shape() == target_.shape())) throw ShapeMismatch("diagram map between different shapes");
  if (static_cast<int>(components_.size()) != source_.shape().size())
    throw ShapeMismatch("diagram map needs one component per vertex");
  for (int x = 0; x < source_.shape().size(); ++x)
    if (!(components_[x].source() == source_.at(x)) || !(components_[x].target() == target_.at(x)))
      throw ShapeMismatch("component at " + source_.shape().name(x) + " has the wrong shape");
  const auto& hasse = source_.shape().hasse();
  for (std::size_t k = 0; k < hasse.size(); ++k) {
    auto [a, b] = hasse[k];
    if (!(target_.edge(k) * components_[a] == components_[b] * source_.edge(k)))
      throw MapNotWellDefined("naturality fails on " + source_.shape().name(a) + " -> " + source_.shape().name(b));
  }
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> DiagramMap<Obj, Mor>::identity(const D& x) {
  std::vector<Mor> c;
  for (const auto& v : x.vertices()) c.push_back(identity_on(v));
  return DiagramMap(x, x, std::move(c), Validate::no);
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> DiagramMap<Obj, Mor>::zero(const D& x, const D& y) {
  std::vector<Mor> c;
  for (int v = 0; v < x.shape().size(); ++v) c.push_back(zero_between(x.at(v), y.at(v)));
  return DiagramMap(x, y, std::move(c), Validate::no);
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> DiagramMap<Obj, Mor>::compose(const DiagramMap& g) const {
  if (!(g.target_ == source_)) throw CompositionError("diagram maps do not compose");
  std::vector<Mor> c;
  for (std::size_t v = 0; v < components_.size(); ++v) c.push_back(components_[v] * g.components_[v]);
  return DiagramMap(g.source_, target_, std::move(c), Validate::no);
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> DiagramMap<Obj, Mor>::operator+(const DiagramMap& o) const {
  std::vector<Mor> c;
  for (std::size_t v = 0; v < components_.size(); ++v) c.push_back(components_[v] + o.components_[v]);
  return DiagramMap(source_, target_, std::move(c), Validate::no);
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> DiagramMap<Obj, Mor>::operator-() const {
  std::vector<Mor> c;
  for (const auto& m : components_) c.push_back(-m);
  return DiagramMap(source_, target_, std::move(c), Validate::no);
}

template <class Obj, class Mor>
bool DiagramMap<Obj, Mor>::is_zero() const {
  for (const auto& m : components_)
    if (!m.is_zero()) return false;
  return true;
}

template class Diagram<FpModule, ModuleMap>;
template class Diagram<CyclicComplex, ChainMap>;
template class DiagramMap<FpModule, ModuleMap>;
template class DiagramMap<CyclicComplex, ChainMap>;

ModDiagram mod_diagram(const FinPoset& shape, int p, std::vector<FpModule> vertices, std::vector<ModuleMap> edges) {
  return ModDiagram(shape, FpModule::zero(p), std::move(vertices), std::move(edges));
}

CxDiagram cx_diagram(const FinPoset& shape, int p, int N, std::vector<CyclicComplex> vertices,
                     std::vector<ChainMap> edges) {
  return CxDiagram(shape, CyclicComplex::zero(p, N), std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Levels

ModDiagram level(const CxDiagram& x, int n) {
  std::vector<FpModule> v;
  std::vector<ModuleMap> e;
  for (const auto& c : x.vertices()) v.push_back(c.module(n));
  for (const auto& f : x.edges()) e.push_back(f.at(n));
  return ModDiagram(x.shape(), FpModule::zero(x.zero_object().p()), std::move(v), std::move(e), Validate::no);
}

ModDiagramMap level_differential(const CxDiagram& x, int n) {
  std::vector<ModuleMap> c;
  for (const auto& v : x.vertices()) c.push_back(v.d(n));
  return ModDiagramMap(level(x, n), level(x, n + 1), std::move(c), Validate::no);
}

ModDiagramMap level(const CxDiagramMap& f, int n) {
  std::vector<ModuleMap> c;
  for (const auto& m : f.components()) c.push_back(m.at(n));
  return ModDiagramMap(level(f.source(), n), level(f.target(), n), std::move(c), Validate::no);
}

CxDiagram assemble(const std::vector<ModDiagram>& levels, const std::vector<ModDiagramMap>& d, int p) {
  const int N = static_cast<int>(levels.size());
  const FinPoset& shape = levels.at(0).shape();
  std::vector<CyclicComplex> vertices;
  for (int x = 0; x < shape.size(); ++x) {
    std::vector<FpModule> mods;
    std::vector<ModuleMap> ds;
    for (int n = 0; n < N; ++n) {
      mods.push_back(levels[n].at(x));
      ds.push_back(d[n].at(x));
    }
    vertices.emplace_back(p, std::move(mods), std::move(ds));
  }
  std::vector<ChainMap> edges;
  for (std::size_t k = 0; k < shape.hasse().size(); ++k) {
    auto [a, b] = shape.hasse()[k];
    std::vector<ModuleMap> comps;
    for (int n = 0; n < N; ++n) comps.push_back(levels[n].edge(k));
    edges.emplace_back(vertices[a], vertices[b], std::move(comps));
  }
  return CxDiagram(shape, CyclicComplex::zero(p, N), std::move(vertices), std::move(edges), Validate::no);
}

CxDiagramMap assemble(const CxDiagram& source, const CxDiagram& target, const std::vector<ModDiagramMap>& levels) {
  std::vector<ChainMap> comps;
  for (int x = 0; x < source.shape().size(); ++x) {
    std::vector<ModuleMap> c;
    for (const auto& l : levels) c.push_back(l.at(x));
    comps.emplace_back(source.at(x), target.at(x), std::move(c));
  }
  return CxDiagramMap(source, target, std::move(comps), Validate::no);
}

// ---------------------------------------------------------------------------
// Pullback and restriction

namespace {

template <class Obj, class Mor>
Diagram<Obj, Mor> pull(const PosetMap& f, const Diagram<Obj, Mor>& x) {
  if (!(f.target() == x.shape())) throw ShapeMismatch("pullback: diagram is not over the target of the map");
  std::vector<Obj> v;
  std::vector<Mor> e;
  for (int c = 0; c < f.source().size(); ++c) v.push_back(x.at(f(c)));
  for (auto [a, b] : f.source().hasse()) e.push_back(x.map(f(a), f(b)));
  return Diagram<Obj, Mor>(f.source(), x.zero_object(), std::move(v), std::move(e), Validate::no);
}

template <class Obj, class Mor>
DiagramMap<Obj, Mor> pull(const PosetMap& f, const DiagramMap<Obj, Mor>& phi) {
  std::vector<Mor> c;
  for (int v = 0; v < f.source().size(); ++v) c.push_back(phi.at(f(v)));
  return DiagramMap<Obj, Mor>(pull(f, phi.source()), pull(f, phi.target()), std::move(c), Validate::no);
}

}  // namespace

ModDiagram pullback(const PosetMap& f, const ModDiagram& x) { return pull(f, x); }
CxDiagram pullback(const PosetMap& f, const CxDiagram& x) { return pull(f, x); }
ModDiagramMap pullback(const PosetMap& f, const ModDiagramMap& phi) { return pull(f, phi); }
CxDiagramMap pullback(const PosetMap& f, const CxDiagramMap& phi) { return pull(f, phi); }

ModDiagram restrict(const ModDiagram& x, const SubPoset& s) { return pull(s.inclusion(x.shape()), x); }
CxDiagram restrict(const CxDiagram& x, const SubPoset& s) { return pull(s.inclusion(x.shape()), x); }

// ---------------------------------------------------------------------------
// Colimits

ModColimit colimit_over(const ModDiagram& x, const std::vector<int>& elements) {
  const int p = x.zero_object().p();
  const FinPoset& shape = x.shape();
  std::vector<FpModule> parts;
  for (int c : elements) parts.push_back(x.at(c));
  ModColimit out;
  out.elements = elements;
  out.sum = direct_sum(parts, p);

  // One relation block per covering pair inside the subset.
  const int k = static_cast<int>(elements.size());
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (!shape.less(elements[i], elements[j])) continue;
      bool cover = true;
      for (int m = 0; m < k && cover; ++m)
        if (shape.less(elements[i], elements[m]) && shape.less(elements[m], elements[j])) cover = false;
      if (cover) covers.emplace_back(i, j);
    }
  std::vector<FpModule> rel_parts;
  for (auto [i, j] : covers) rel_parts.push_back(parts[i]);
  DirectSum rel = direct_sum(rel_parts, p);
  std::vector<std::vector<ModuleMap>> blocks(static_cast<std::size_t>(k),
                                             std::vector<ModuleMap>(covers.size()));
  for (std::size_t r = 0; r < covers.size(); ++r) {
    auto [i, j] = covers[r];
    blocks[i][r] = ModuleMap::identity(parts[i]);
    blocks[j][r] = -x.map(elements[i], elements[j]);
  }
  ModuleMap relation_map = block_map(rel, out.sum, blocks);
  out.projection = cokernel_projection(relation_map);
  out.module = out.projection.target();
  return out;
}

ModColimit strict_colim(const ModDiagram& x) {
  std::vector<int> all(static_cast<std::size_t>(x.shape().size()));
  for (int i = 0; i < x.shape().size(); ++i) all[i] = i;
  return colimit_over(x, all);
}

namespace {

ModuleMap colimit_map_with(const ModColimit& source, const ModColimit& target,
                           const std::function<ModuleMap(int)>& component) {
  const std::size_t ns = source.elements.size(), nt = target.elements.size();
  std::vector<std::vector<ModuleMap>> blocks(nt, std::vector<ModuleMap>(ns));
  for (std::size_t j = 0; j < ns; ++j) {
    auto it = std::find(target.elements.begin(), target.elements.end(), source.elements[j]);
    if (it == target.elements.end()) throw ShapeMismatch("colimit map: index sets are not nested");
    blocks[it - target.elements.begin()][j] = component(source.elements[j]);
  }
  ModuleMap on_sums = block_map(source.sum, target.sum, blocks);
  return descend_through(target.projection * on_sums, source.projection);
}

}  // namespace

ModuleMap colimit_map(const ModColimit& source, const ModColimit& target, const ModDiagramMap& phi) {
  return colimit_map_with(source, target, [&](int c) { return phi.at(c); });
}

CxColimit strict_colim(const CxDiagram& x) {
  const int N = x.zero_object().N();
  const int p = x.zero_object().p();
  std::vector<ModColimit> cols;
  for (int n = 0; n < N; ++n) cols.push_back(strict_colim(level(x, n)));
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) {
    mods.push_back(cols[n].module);
    ds.push_back(colimit_map(cols[n], cols[wrap(n + 1, N)], level_differential(x, n)));
  }
  CxColimit out;
  out.complex = CyclicComplex(p, std::move(mods), std::move(ds));
  for (int c = 0; c < x.shape().size(); ++c) {
    std::vector<ModuleMap> comps;
    for (int n = 0; n < N; ++n) comps.push_back(cols[n].cocone(c));
    out.cocone.emplace_back(x.at(c), out.complex, std::move(comps));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left Kan extensions

ModLkan lkan_with_colimits(const PosetMap& f, const ModDiagram& x) {
  if (!(f.source() == x.shape())) throw ShapeMismatch("Kan extension: diagram is not over the source of the map");
  ModLkan out;
  const FinPoset& d = f.target();
  for (int t = 0; t < d.size(); ++t) out.colimits.push_back(colimit_over(x, slice_to(f, t).elements));
  std::vector<FpModule> v;
  std::vector<ModuleMap> e;
  for (const auto& c : out.colimits) v.push_back(c.module);
  for (auto [a, b] : d.hasse())
    e.push_back(colimit_map_with(out.colimits[a], out.colimits[b], [&](int c) { return ModuleMap::identity(x.at(c)); }));
  out.diagram = ModDiagram(d, x.zero_object(), std::move(v), std::move(e), Validate::no);
  return out;
}

ModDiagramMap lkan_map(const ModLkan& src, const ModLkan& tgt, const ModDiagramMap& phi) {
  std::vector<ModuleMap> comps;
  for (std::size_t t = 0; t < src.colimits.size(); ++t)
    comps.push_back(colimit_map(src.colimits[t], tgt.colimits[t], phi));
  return ModDiagramMap(src.diagram, tgt.diagram, std::move(comps), Validate::no);
}

ModDiagram strict_lkan(const PosetMap& f, const ModDiagram& x) { return lkan_with_colimits(f, x).diagram; }

ModDiagramMap strict_lkan(const PosetMap& f, const ModDiagramMap& phi) {
  return lkan_map(lkan_with_colimits(f, phi.source()), lkan_with_colimits(f, phi.target()), phi);
}

CxDiagram strict_lkan(const PosetMap& f, const CxDiagram& x) {
  const int N = x.zero_object().N();
  std::vector<ModLkan> data;
  for (int n = 0; n < N; ++n) data.push_back(lkan_with_colimits(f, level(x, n)));
  std::vector<ModDiagram> levels;
  std::vector<ModDiagramMap> ds;
  for (int n = 0; n < N; ++n) {
    levels.push_back(data[n].diagram);
    ds.push_back(lkan_map(data[n], data[wrap(n + 1, N)], level_differential(x, n)));
  }
  return assemble(levels, ds, x.zero_object().p());
}

CxDiagramMap strict_lkan(const PosetMap& f, const CxDiagramMap& phi) {
  const int N = phi.source().zero_object().N();
  CxDiagram src = strict_lkan(f, phi.source());
  CxDiagram tgt = strict_lkan(f, phi.target());
  std::vector<ModDiagramMap> levels;
  for (int n = 0; n < N; ++n)
    levels.push_back(lkan_map(lkan_with_colimits(f, level(phi.source(), n)), lkan_with_colimits(f, level(phi.target(), n)), level(phi, n)));
  return assemble(src, tgt, levels);
}

ModDiagramMap lkan_unit(const PosetMap& f, const ModDiagram& x) {
  ModLkan data = lkan_with_colimits(f, x);
  std::vector<ModuleMap> comps;
  for (int c = 0; c < f.source().size(); ++c) {
    const ModColimit& col = data.colimits[f(c)];
    auto it = std::find(col.elements.begin(), col.elements.end(), c);
    comps.push_back(col.cocone(static_cast<int>(it - col.elements.begin())));
  }
  return ModDiagramMap(x, pullback(f, data.diagram), std::move(comps));
}

// ---------------------------------------------------------------------------
// Reedy cofibrancy

ModuleMap latching_map(const ModDiagram& x, int c) {
  std::vector<int> below;
  for (int a = 0; a < x.shape().size(); ++a)
    if (x.shape().less(a, c)) below.push_back(a);
  ModColimit col = colimit_over(x, below);
  std::vector<std::vector<ModuleMap>> blocks(1, std::vector<ModuleMap>(below.size()));
  for (std::size_t j = 0; j < below.size(); ++j) blocks[0][j] = x.map(below[j], c);
  ModuleMap on_sum = block_map(col.sum, direct_sum({x.at(c)}, x.zero_object().p()), blocks);
  return descend_through(on_sum, col.projection);
}

bool is_reedy_cofibrant(const ModDiagram& x) {
  for (int c = 0; c < x.shape().size(); ++c)
    if (!latching_map(x, c).is_mono()) return false;
  return true;
}

bool is_reedy_cofibrant(const CxDiagram& x) {
  for (int n = 0; n < x.zero_object().N(); ++n)
    if (!is_reedy_cofibrant(level(x, n))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tensor

ModDiagram diagram_tensor(const ModDiagram& x, const ModDiagram& u) {
  const FinPoset shape = product(x.shape(), u.shape());
  const int m = u.shape().size();
  std::vector<FpModule> v;
  for (int a = 0; a < x.shape().size(); ++a)
    for (int b = 0; b < m; ++b) v.push_back(tensor(x.at(a), u.at(b)).module);
  std::vector<ModuleMap> e;
  for (auto [i, j] : shape.hasse()) e.push_back(tensor_maps(x.map(i / m, j / m), u.map(i % m, j % m)));
  return ModDiagram(shape, x.zero_object(), std::move(v), std::move(e), Validate::no);
}

CxDiagram diagram_tensor(const CxDiagram& x, const CxDiagram& u) {
  const FinPoset shape = product(x.shape(), u.shape());
  const int m = u.shape().size();
  std::vector<CyclicTensor> t;
  std::vector<CyclicComplex> v;
  for (int a = 0; a < x.shape().size(); ++a)
    for (int b = 0; b < m; ++b) {
      t.push_back(tensor_cyclic(x.at(a), u.at(b)));
      v.push_back(t.back().complex);
    }
  std::vector<ChainMap> e;
  for (auto [i, j] : shape.hasse())
    e.push_back(tensor_chain_maps(x.map(i / m, j / m), u.map(i % m, j % m), t[i], t[j]));
  return CxDiagram(shape, x.zero_object(), std::move(v), std::move(e), Validate::no);
}

CxDiagramMap diagram_tensor(const CxDiagramMap& f, const CxDiagramMap& g) {
  CxDiagram src = diagram_tensor(f.source(), g.source());
  CxDiagram tgt = diagram_tensor(f.target(), g.target());
  const int m = g.source().shape().size();
  std::vector<ChainMap> comps;
  for (int i = 0; i < src.shape().size(); ++i) {
    const int a = i / m, b = i % m;
    comps.push_back(tensor_chain_maps(f.at(a), g.at(b), tensor_cyclic(f.source().at(a), g.source().at(b)),
                                      tensor_cyclic(f.target().at(a), g.target().at(b))));
  }
  return CxDiagramMap(src, tgt, std::move(comps), Validate::no);
}

ModDiagram arrow_diagram(const ModuleMap& f) {
  return mod_diagram(posets::interval(), f.p(), {f.source(), f.target()}, {f});
}

CxDiagram arrow_diagram(const ChainMap& f) {
  return cx_diagram(posets::interval(), f.source().p(), f.source().N(), {f.source(), f.target()}, {f});
}

}  // namespace kanlim
