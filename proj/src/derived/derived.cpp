#include "kanlim/derived/derived.hpp"

#include <algorithm>
#include <sstream>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

using linalg::SparseVec;

namespace {

SparseVec unit_vec(int i) { return SparseVec{{i, PScalar(1)}}; }

ModuleMap zero_from_nothing(const FpModule& m) { return ModuleMap::zero(FpModule::zero(m.p()), m); }
ModuleMap zero_to_nothing(const FpModule& m) { return ModuleMap::zero(m, FpModule::zero(m.p())); }

int prime_of(const ModDiagram& x) { return x.zero_object().p(); }

}  // namespace

// ---------------------------------------------------------------------------
// P~ and R~

PTilde ptilde(const ModDiagram& x) {
  const FinPoset& s = x.shape();
  const int p = prime_of(x);
  PTilde out;
  std::vector<FpModule> v;
  std::vector<ModuleMap> counit;
  for (int t = 0; t < s.size(); ++t) {
    std::vector<int> down = s.down_set(t);
    std::sort(down.begin(), down.end());
    std::vector<FpModule> parts;
    for (int d : down) parts.push_back(x.at(d));
    DirectSum sum = direct_sum(parts, p);
    ModuleMap eps = ModuleMap::zero(sum.module, x.at(t));
    for (std::size_t j = 0; j < down.size(); ++j) eps = eps + x.map(down[j], t) * sum.projection(j);
    v.push_back(sum.module);
    counit.push_back(eps);
    out.summands.push_back(std::move(down));
    out.sums.push_back(std::move(sum));
  }
  std::vector<ModuleMap> e;
  for (auto [a, b] : s.hasse()) {
    const auto& da = out.summands[a];
    const auto& db = out.summands[b];
    std::vector<std::vector<ModuleMap>> blocks(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) {
      blocks[i].resize(da.size());
      auto it = std::find(da.begin(), da.end(), db[i]);
      if (it != da.end()) blocks[i][it - da.begin()] = ModuleMap::identity(x.at(db[i]));
    }
    e.push_back(block_map(out.sums[a], out.sums[b], blocks));
  }
  out.diagram = ModDiagram(s, x.zero_object(), std::move(v), std::move(e), Validate::no);
  out.counit = ModDiagramMap(out.diagram, x, std::move(counit), Validate::no);
  return out;
}

ModDiagramMap ptilde(const ModDiagramMap& phi, const PTilde& src, const PTilde& tgt) {
  std::vector<ModuleMap> comps;
  for (std::size_t t = 0; t < src.sums.size(); ++t) {
    const auto& down = src.summands[t];
    std::vector<std::vector<ModuleMap>> blocks(down.size(), std::vector<ModuleMap>(down.size()));
    for (std::size_t j = 0; j < down.size(); ++j) blocks[j][j] = phi.at(down[j]);
    comps.push_back(block_map(src.sums[t], tgt.sums[t], blocks));
  }
  return ModDiagramMap(src.diagram, tgt.diagram, std::move(comps), Validate::no);
}

RTilde rtilde(const ModDiagram& x, const PTilde& p) {
  const FinPoset& s = x.shape();
  std::vector<FpModule> v;
  std::vector<ModuleMap> incl;
  for (int t = 0; t < s.size(); ++t) {
    ModuleMap k = kernel_inclusion(p.counit.at(t));
    v.push_back(k.source());
    incl.push_back(std::move(k));
  }
  std::vector<ModuleMap> e;
  const auto& hasse = s.hasse();
  for (std::size_t k = 0; k < hasse.size(); ++k) {
    auto [a, b] = hasse[k];
    e.push_back(lift_through(p.diagram.edge(static_cast<int>(k)) * incl[a], incl[b]));
  }
  RTilde out;
  out.diagram = ModDiagram(s, x.zero_object(), std::move(v), std::move(e), Validate::no);
  out.inclusion = ModDiagramMap(out.diagram, p.diagram, std::move(incl), Validate::no);
  return out;
}

RTilde rtilde(const ModDiagram& x) { return rtilde(x, ptilde(x)); }

ModDiagramMap rtilde(const ModDiagramMap& phi, const PTilde& psrc, const RTilde& src, const PTilde& ptgt,
                     const RTilde& tgt) {
  ModDiagramMap pphi = ptilde(phi, psrc, ptgt);
  std::vector<ModuleMap> comps;
  for (int t = 0; t < phi.source().shape().size(); ++t)
    comps.push_back(lift_through(pphi.at(t) * src.inclusion.at(t), tgt.inclusion.at(t)));
  return ModDiagramMap(src.diagram, tgt.diagram, std::move(comps), Validate::no);
}

Resolution resolve(const ModDiagram& x) {
  const int h = x.shape().height();
  Resolution out;
  ModDiagram cur = x;
  for (int k = 0; k <= h; ++k) {
    PTilde pt = ptilde(cur);
    RTilde rt = rtilde(cur, pt);
    out.kernels.push_back(cur);
    out.stages.push_back(pt.diagram);
    out.ptildes.push_back(pt);
    cur = rt.diagram;
    out.rtildes.push_back(std::move(rt));
  }
  out.kernels.push_back(cur);
  for (int k = 0; k < h; ++k) out.boundary.push_back(out.rtildes[k].inclusion * out.ptildes[k + 1].counit);
  out.augmentation = out.ptildes[0].counit;
  return out;
}

std::vector<ModDiagramMap> resolve(const ModDiagramMap& phi, const Resolution& src, const Resolution& tgt) {
  if (src.stages.size() != tgt.stages.size()) throw ShapeMismatch("resolutions of different length");
  std::vector<ModDiagramMap> out;
  ModDiagramMap cur = phi;
  for (std::size_t k = 0; k < src.stages.size(); ++k) {
    out.push_back(ptilde(cur, src.ptildes[k], tgt.ptildes[k]));
    cur = rtilde(cur, src.ptildes[k], src.rtildes[k], tgt.ptildes[k], tgt.rtildes[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived Kan extensions of module diagrams

Subquotient homology_subquotient(const ModuleMap& in, const ModuleMap& out) {
  if (in.target() != out.source()) throw CompositionError("homology: maps do not compose");
  const FpModule& b = in.target();
  const int gens = b.num_generators();
  auto cycles = kernel_top(with_relations(out.matrix(), out.target()), out.target().num_generators(), gens, b.p());
  return Subquotient(std::move(cycles), with_relations(in.matrix(), b), gens, b.p());
}

FinPoset point() { return FinPoset({"*"}, {}); }

PosetMap to_point(const FinPoset& c) { return PosetMap::constant(c, point(), 0); }

ModDiagram derived_lkan(const PosetMap& f, const ModDiagram& x, int s) {
  if (s < 0) throw ShapeMismatch("negative derived degree");
  const FinPoset& d = f.target();
  Resolution res = resolve(x);
  const int len = static_cast<int>(res.stages.size());
  if (s >= len) return ModDiagram::zero(d, x.zero_object());
  ModLkan here = lkan_with_colimits(f, res.stages[s]);
  std::vector<ModuleMap> in(d.size()), out(d.size());
  if (s + 1 < len) {
    ModDiagramMap m = lkan_map(lkan_with_colimits(f, res.stages[s + 1]), here, res.boundary[s]);
    in = m.components();
  } else {
    for (int t = 0; t < d.size(); ++t) in[t] = zero_from_nothing(here.diagram.at(t));
  }
  if (s >= 1) {
    ModDiagramMap m = lkan_map(here, lkan_with_colimits(f, res.stages[s - 1]), res.boundary[s - 1]);
    out = m.components();
  } else {
    for (int t = 0; t < d.size(); ++t) out[t] = zero_to_nothing(here.diagram.at(t));
  }
  std::vector<Subquotient> h;
  std::vector<FpModule> v;
  for (int t = 0; t < d.size(); ++t) {
    h.push_back(homology_subquotient(in[t], out[t]));
    v.push_back(h.back().module());
  }
  std::vector<ModuleMap> e;
  const auto& hasse = d.hasse();
  for (std::size_t k = 0; k < hasse.size(); ++k)
    e.push_back(induced_map(h[hasse[k].first], h[hasse[k].second], here.diagram.edge(static_cast<int>(k)).matrix()));
  return ModDiagram(d, x.zero_object(), std::move(v), std::move(e), Validate::no);
}

FpModule derived_colim(const ModDiagram& x, int s) { return derived_lkan(to_point(x.shape()), x, s).at(0); }

// ---------------------------------------------------------------------------
// Double complex and totalization

KanDoubleComplex kan_double_complex(const PosetMap& f, const CxDiagram& x) {
  if (!(f.source() == x.shape())) throw ShapeMismatch("Kan extension: diagram is not over the source of the map");
  KanDoubleComplex dc;
  dc.p = x.zero_object().p();
  dc.N = x.zero_object().N();
  dc.target = f.target();
  const int N = dc.N;
  std::vector<Resolution> res;
  for (int n = 0; n < N; ++n) res.push_back(resolve(level(x, n)));
  std::vector<std::vector<ModDiagramMap>> stage_maps;
  for (int n = 0; n < N; ++n) stage_maps.push_back(resolve(level_differential(x, n), res[n], res[wrap(n + 1, N)]));
  dc.columns = static_cast<int>(res[0].stages.size());
  for (int n = 0; n < N; ++n) {
    dc.base.push_back(res[n].ptildes[0]);
    dc.strict_lkan.push_back(lkan_with_colimits(f, level(x, n)));
  }
  for (int n = 0; n < N; ++n)
    dc.strict_differential.push_back(
        lkan_map(dc.strict_lkan[n], dc.strict_lkan[wrap(n + 1, N)], level_differential(x, n)));
  std::vector<std::vector<ModLkan>> lk(dc.columns);
  for (int k = 0; k < dc.columns; ++k)
    for (int n = 0; n < N; ++n) lk[k].push_back(lkan_with_colimits(f, res[n].stages[k]));
  dc.cells.resize(dc.columns);
  dc.vertical.resize(dc.columns);
  dc.horizontal.resize(dc.columns > 0 ? dc.columns - 1 : 0);
  for (int k = 0; k < dc.columns; ++k)
    for (int n = 0; n < N; ++n) {
      dc.cells[k].push_back(lk[k][n].diagram);
      dc.vertical[k].push_back(lkan_map(lk[k][n], lk[k][wrap(n + 1, N)], stage_maps[n][k]));
      if (k + 1 < dc.columns) dc.horizontal[k].push_back(lkan_map(lk[k + 1][n], lk[k][n], res[n].boundary[k]));
    }
  for (int n = 0; n < N; ++n) {
    dc.base_lkan.push_back(lk[0][n]);
    dc.augmentation.push_back(lkan_map(lk[0][n], dc.strict_lkan[n], res[n].augmentation));
  }
  return dc;
}

CyclicComplex KanDoubleComplex::column(int k, int vertex) const {
  std::vector<FpModule> m;
  std::vector<ModuleMap> d;
  for (int n = 0; n < N; ++n) {
    m.push_back(cells.at(k)[n].at(vertex));
    d.push_back(vertical.at(k)[n].at(vertex));
  }
  return CyclicComplex(p, std::move(m), std::move(d));
}

ChainMap KanDoubleComplex::horizontal_map(int k, int vertex) const {
  std::vector<ModuleMap> comps;
  for (int n = 0; n < N; ++n) comps.push_back(horizontal.at(k)[n].at(vertex));
  return ChainMap(column(k + 1, vertex), column(k, vertex), std::move(comps));
}

namespace {

std::vector<DirectSum> tot_layout(const KanDoubleComplex& dc, int vertex) {
  std::vector<DirectSum> layout;
  for (int m = 0; m < dc.N; ++m) {
    std::vector<FpModule> parts;
    for (int k = 0; k < dc.columns; ++k) parts.push_back(dc.cells[k][wrap(m + k, dc.N)].at(vertex));
    layout.push_back(direct_sum(parts, dc.p));
  }
  return layout;
}

}  // namespace

Totalization totalize(const KanDoubleComplex& dc, int vertex) {
  const int N = dc.N;
  const int c = dc.columns;
  Totalization out;
  out.layout = tot_layout(dc, vertex);
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int m = 0; m < N; ++m) {
    std::vector<std::vector<ModuleMap>> blocks(c, std::vector<ModuleMap>(c));
    const bool odd = wrap(m, 2) == 1;
    for (int k = 0; k < c; ++k) {
      const int n = wrap(m + k, N);
      blocks[k][k] = dc.vertical[k][n].at(vertex);
      if (k >= 1) {
        const ModuleMap& h = dc.horizontal[k - 1][n].at(vertex);
        blocks[k - 1][k] = odd ? -h : h;
      }
    }
    mods.push_back(out.layout[m].module);
    ds.push_back(block_map(out.layout[m], out.layout[wrap(m + 1, N)], blocks));
  }
  out.complex = CyclicComplex(dc.p, std::move(mods), std::move(ds));
  return out;
}

CyclicComplex strict_vertex(const KanDoubleComplex& dc, int vertex) {
  std::vector<FpModule> m;
  std::vector<ModuleMap> d;
  for (int n = 0; n < dc.N; ++n) {
    m.push_back(dc.strict_lkan[n].diagram.at(vertex));
    d.push_back(dc.strict_differential[n].at(vertex));
  }
  return CyclicComplex(dc.p, std::move(m), std::move(d));
}

ChainMap tot_to_strict(const KanDoubleComplex& dc, const Totalization& tot, int vertex) {
  std::vector<ModuleMap> comps;
  for (int n = 0; n < dc.N; ++n) comps.push_back(dc.augmentation[n].at(vertex) * tot.layout[n].projection(0));
  return ChainMap(tot.complex, strict_vertex(dc, vertex), std::move(comps));
}

ChainMap tot_leg(const KanDoubleComplex& dc, const Totalization& tot, const CxDiagram& x, int c, int vertex) {
  std::vector<ModuleMap> comps;
  for (int n = 0; n < dc.N; ++n) {
    const auto& down = dc.base[n].summands[c];
    const auto at = std::find(down.begin(), down.end(), c) - down.begin();
    const ModColimit& col = dc.base_lkan[n].colimits.at(vertex);
    auto it = std::find(col.elements.begin(), col.elements.end(), c);
    if (it == col.elements.end()) throw NotMonotone("leg: element does not lie over the vertex");
    comps.push_back(tot.layout[n].injection(0) * col.cocone(static_cast<int>(it - col.elements.begin())) *
                    dc.base[n].sums[c].injection(static_cast<std::size_t>(at)));
  }
  return ChainMap(x.at(c), tot.complex, std::move(comps));
}

ChainMap tot_edge(const KanDoubleComplex& dc, const Totalization& from, const Totalization& to, int a, int b) {
  if (dc.columns == 0 || dc.cells[0].empty()) throw ShapeMismatch("tot_edge: empty double complex");
  const int idx = dc.cells[0][0].edge_index(a, b);
  if (idx < 0) throw NotMonotone("tot_edge: not a Hasse edge");
  std::vector<ModuleMap> comps;
  for (int m = 0; m < dc.N; ++m) {
    std::vector<std::vector<ModuleMap>> blocks(dc.columns, std::vector<ModuleMap>(dc.columns));
    for (int k = 0; k < dc.columns; ++k) blocks[k][k] = dc.cells[k][wrap(m + k, dc.N)].edge(idx);
    comps.push_back(block_map(from.layout[m], to.layout[m], blocks));
  }
  return ChainMap(from.complex, to.complex, std::move(comps));
}

CxDiagram holkan_cx(const PosetMap& f, const CxDiagram& x) {
  KanDoubleComplex dc = kan_double_complex(f, x);
  const FinPoset& d = f.target();
  std::vector<Totalization> tots;
  std::vector<CyclicComplex> v;
  for (int t = 0; t < d.size(); ++t) {
    tots.push_back(totalize(dc, t));
    v.push_back(tots.back().complex);
  }
  std::vector<ChainMap> e;
  for (auto [a, b] : d.hasse()) e.push_back(tot_edge(dc, tots[a], tots[b], a, b));
  return CxDiagram(d, x.zero_object(), std::move(v), std::move(e), Validate::no);
}

CyclicComplex hocolim_cx(const CxDiagram& x) {
  return totalize(kan_double_complex(to_point(x.shape()), x), 0).complex;
}

// ---------------------------------------------------------------------------
// Cones and the box product

CxDiagram cone_diagram(const ChainMap& f) {
  FinPoset v = posets::vee();
  const CyclicComplex zero = CyclicComplex::zero(f.source().p(), f.source().N());
  const int corner = v.index("(0,0)");
  const int left = v.index("(1,0)");
  std::vector<CyclicComplex> verts(v.size());
  verts[corner] = f.source();
  verts[left] = zero;
  verts[v.index("(0,1)")] = f.target();
  std::vector<ChainMap> e;
  for (auto [a, b] : v.hasse()) e.push_back(b == left ? ChainMap::zero(f.source(), zero) : f);
  return CxDiagram(v, zero, std::move(verts), std::move(e));
}

CyclicComplex diagram_cone(const ChainMap& f) { return hocolim_cx(cone_diagram(f)); }

ChainMap cone_map(const ChainMap& f) {
  FinPoset v = posets::vee();
  FinPoset sq = product(posets::interval(), posets::interval());
  std::vector<int> images;
  for (const auto& n : v.names()) images.push_back(sq.index(n));
  CxDiagram h = holkan_cx(PosetMap(v, sq, images), cone_diagram(f));
  return h.map(sq.index("(0,1)"), sq.index("(1,1)"));
}

ChainMap derived_box(const ChainMap& f, const ChainMap& g) {
  CxDiagram square = diagram_tensor(arrow_diagram(f), arrow_diagram(g));
  return holkan_cx(posets::p_v(), square).map(0, 1);
}

// ---------------------------------------------------------------------------
// Spectral sequence of the column filtration

namespace {

class ColumnFiltration {
 public:
  ColumnFiltration(const Totalization& tot, int columns) : tot_(tot), columns_(columns) {}

  const FpModule& module(int m) const { return tot_.complex.module(m); }

  /// Generators of Tot^m lying in columns 0..j.
  std::vector<int> upto(int m, int j) const {
    std::vector<int> out;
    const DirectSum& ds = tot_.layout[wrap(m, tot_.complex.N())];
    for (int k = 0; k <= std::min(j, columns_ - 1); ++k)
      out.insert(out.end(), ds.index[k].begin(), ds.index[k].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// {x in S_j^m : D x in S_lower^{m+1} + relations}, in ambient coordinates.
  std::vector<SparseVec> cycles(int m, int j, int lower) const {
    const std::vector<int> src = upto(m, j);
    if (src.empty()) return {};
    const FpModule& next = module(m + 1);
    const std::vector<int> low = upto(m + 1, lower);
    std::vector<int> pos(next.num_generators(), -1);
    int rows = 0;
    for (int i = 0; i < next.num_generators(); ++i)
      if (!std::binary_search(low.begin(), low.end(), i)) pos[i] = rows++;
    std::vector<SparseVec> out;
    if (rows == 0) {
      for (int i : src) out.push_back(unit_vec(i));
      return out;
    }
    const PMatrix& d = tot_.complex.d(m).matrix();
    std::vector<SparseVec> cols;
    for (int i : src) {
      SparseVec c;
      for (const auto& [r, val] : linalg::column(d, i))
        if (pos[r] >= 0) c.emplace_back(pos[r], val);
      cols.push_back(std::move(c));
    }
    for (const auto& rel : next.relations())
      if (pos[rel.front().first] >= 0) cols.push_back(SparseVec{{pos[rel.front().first], rel.front().second}});
    for (auto& v : kernel_top(cols, rows, static_cast<int>(src.size()), tot_.complex.p())) {
      SparseVec amb;
      for (const auto& [i, val] : v) amb.emplace_back(src[i], val);
      out.push_back(std::move(amb));
    }
    return out;
  }

  std::vector<SparseVec> image(int m, const std::vector<SparseVec>& ys) const {
    const PMatrix& d = tot_.complex.d(m - 1).matrix();
    const int n = module(m - 1).num_generators();
    std::vector<SparseVec> out;
    for (const auto& y : ys) out.push_back(linalg::to_sparse(PVector(d * linalg::to_dense(y, n))));
    return out;
  }

  void append_units(std::vector<SparseVec>& v, int m, int j) const {
    for (int i : upto(m, j)) v.push_back(unit_vec(i));
  }
  void append_relations(std::vector<SparseVec>& v, int m) const {
    for (auto& r : module(m).relations()) v.push_back(std::move(r));
  }

  /// E_r at filtration j, total degree m.
  FpModule page(int r, int j, int m) const {
    std::vector<SparseVec> num = cycles(m, j, j - r);
    append_units(num, m, j - 1);
    append_relations(num, m);
    std::vector<SparseVec> den = image(m, cycles(m - 1, std::min(j + r - 1, columns_ - 1), j));
    append_units(den, m, j - 1);
    append_relations(den, m);
    return Subquotient(std::move(num), den, module(m).num_generators(), tot_.complex.p()).module();
  }

  /// gr_j H^m, from cocycles and coboundaries of Tot directly.
  FpModule graded(int j, int m) const {
    std::vector<SparseVec> b = with_relations(tot_.complex.d(m - 1).matrix(), module(m));
    std::vector<SparseVec> num = cycles(m, j, -1);
    std::vector<SparseVec> den = cycles(m, j - 1, -1);
    num.insert(num.end(), b.begin(), b.end());
    den.insert(den.end(), b.begin(), b.end());
    return Subquotient(std::move(num), den, module(m).num_generators(), tot_.complex.p()).module();
  }

 private:
  const Totalization& tot_;
  int columns_;
};

}  // namespace

SpectralSequence spectral_sequence(const KanDoubleComplex& dc, int vertex) {
  SpectralSequence out;
  out.vertex = vertex;
  out.columns = dc.columns;
  out.N = dc.N;
  out.tot = totalize(dc, vertex);
  ColumnFiltration filt(out.tot, dc.columns);
  for (int r = 1; r <= dc.columns + 1; ++r) {
    SseqPage page;
    page.r = r;
    for (int j = 0; j < dc.columns; ++j)
      for (int t = 0; t < dc.N; ++t) page.cells[{-j, t}] = filt.page(r, j, wrap(t - j, dc.N));
    out.pages.push_back(std::move(page));
  }
  out.e_infinity.r = dc.columns + 1;
  for (int j = 0; j < dc.columns; ++j)
    for (int t = 0; t < dc.N; ++t) out.e_infinity.cells[{-j, t}] = filt.graded(j, wrap(t - j, dc.N));

  std::vector<CyclicComplex> cols;
  std::vector<ChainMap> hor;
  for (int k = 0; k < dc.columns; ++k) cols.push_back(dc.column(k, vertex));
  for (int k = 0; k + 1 < dc.columns; ++k) hor.push_back(dc.horizontal_map(k, vertex));
  out.e2_from_d1.r = 2;
  for (int k = 0; k < dc.columns; ++k)
    for (int t = 0; t < dc.N; ++t) {
      const FpModule here = cohomology(cols[k], t);
      ModuleMap in = k + 1 < dc.columns ? induced_on_cohomology(hor[k], t) : zero_from_nothing(here);
      ModuleMap outm = k >= 1 ? induced_on_cohomology(hor[k - 1], t) : zero_to_nothing(here);
      out.e2_from_d1.cells[{-k, t}] = homology_subquotient(in, outm).module();
    }
  return out;
}

std::vector<SpectralSequence> sseq_pages(const PosetMap& f, const CxDiagram& x) {
  KanDoubleComplex dc = kan_double_complex(f, x);
  std::vector<SpectralSequence> out;
  for (int t = 0; t < f.target().size(); ++t) out.push_back(spectral_sequence(dc, t));
  return out;
}

// ---------------------------------------------------------------------------
// Checks

MapInvariants invariants(const ModuleMap& f) {
  Subquotients s = subquotients(f);
  return {f.source(), f.target(), s.kernel, s.image, s.cokernel};
}

CheckResult edge_check(const PosetMap& f, const CxDiagram& x, int d, int d_prime) {
  return edge_check(f, x, holkan_cx(f, x), d, d_prime);
}

CheckResult edge_check(const PosetMap& f, const CxDiagram& x, const CxDiagram& holkan, int d, int d_prime) {
  const FinPoset& target = f.target();
  std::ostringstream name;
  name << "edge " << target.name(d) << " <= " << target.name(d_prime);
  CheckResult out;
  out.name = name.str();
  if (!target.leq(d, d_prime)) throw NotMonotone(out.name + ": not comparable");
  const ChainMap e = holkan.map(d, d_prime);

  SubPoset slice = slice_to(f, d_prime);
  CxDiagram local = holkan_cx(posets::p_edge(f, d, d_prime), restrict(x, slice));
  if (!(local.map(0, 1) == e)) out.fail("slice comparison: maps differ");

  posets::BPoset b = posets::b_poset(f, d, d_prime);
  const ChainMap eb = holkan_cx(b.p_b, pullback(b.j_b, x)).map(0, 1);
  for (int n = 0; n < e.source().N(); ++n)
    if (!(invariants(induced_on_cohomology(e, n)) == invariants(induced_on_cohomology(eb, n))))
      out.fail("B comparison: cohomology invariants differ in degree " + std::to_string(n));
  return out;
}

std::vector<std::vector<FpModule>> cohomology_table(const CxDiagram& x) {
  std::vector<std::vector<FpModule>> out;
  for (const auto& c : x.vertices()) out.push_back(cohomology_all(c));
  return out;
}

}  // namespace kanlim
