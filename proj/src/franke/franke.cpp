#include "kanlim/franke/franke.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

namespace {

using posets::beta;
using posets::gamma;
using posets::zeta;

/// f in degrees `degree`, `degree` + 1; zero elsewhere.
CyclicComplex two_term(const ModuleMap& f, int degree, int N) {
  const int p = f.p();
  std::vector<FpModule> m(N, FpModule::zero(p));
  const int lo = wrap(degree, N), hi = wrap(degree + 1, N);
  m[lo] = f.source();
  m[hi] = f.target();
  std::vector<ModuleMap> d;
  for (int k = 0; k < N; ++k) d.push_back(k == lo ? f : ModuleMap::zero(m[k], m[wrap(k + 1, N)]));
  return CyclicComplex(p, std::move(m), std::move(d));
}

/// Chain map that is f in one degree and zero elsewhere.
ChainMap single_degree(const CyclicComplex& src, const CyclicComplex& tgt, int degree, const ModuleMap& f) {
  std::vector<ModuleMap> comps;
  for (int k = 0; k < src.N(); ++k)
    comps.push_back(k == wrap(degree, src.N()) ? f : ModuleMap::zero(src.module(k), tgt.module(k)));
  return ChainMap(src, tgt, std::move(comps));
}

/// The map src -> H given by ambient images of the generators of src.
ModuleMap into_classes(const FpModule& src, const Subquotient& classes, const ModuleMap& ambient) {
  const int n = src.num_generators();
  PMatrix m = zero_matrix(classes.module().num_generators(), n);
  for (int i = 0; i < n; ++i) m.col(i) = classes.coordinates(linalg::column(ambient.matrix(), i));
  return ModuleMap(src, classes.module(), std::move(m));
}

PVector zero_vector(int n) { return PVector::Constant(n, PScalar(0)); }

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : "; ") + x;
  return out;
}

std::string modules_string(const std::vector<FpModule>& ms) {
  std::string out = "(";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + ms[i].to_string();
  return out + ")";
}

FpModule sum_of(const std::vector<FpModule>& ms, int p) { return direct_sum(ms, p).module; }

}  // namespace

// ---------------------------------------------------------------------------
// LObject

LObject::LObject(CxDiagram diagram) : diagram_(std::move(diagram)) {
  CheckResult r = check(diagram_);
  if (!r.passed) throw NotInL(join(r.notes));
  cohomology_ = cohomology_table(diagram_);
}

int LObject::beta(int n) const { return diagram_.shape().index(posets::beta(n, N())); }
int LObject::zeta(int n) const { return diagram_.shape().index(posets::zeta(n, N())); }

CheckResult LObject::check(const CxDiagram& x) {
  const int N = x.zero_object().N();
  if (!(x.shape() == posets::crown(N))) throw ShapeMismatch("L-objects live over the crown");
  CheckResult out{"L-membership", true, {}};
  const FinPoset& c = x.shape();
  for (int n = 0; n < N; ++n) {
    const int bv = c.index(posets::beta(n, N)), zv = c.index(posets::zeta(n, N));
    for (int m = 0; m < N; ++m) {
      if (m == n) continue;
      if (!cohomology(x.at(zv), m).is_zero())
        out.fail("H^" + std::to_string(m) + " of " + posets::zeta(n, N) + " is nonzero");
      if (!cohomology(x.at(bv), m).is_zero())
        out.fail("H^" + std::to_string(m) + " of " + posets::beta(n, N) + " is nonzero");
    }
    if (!induced_on_cohomology(x.map(bv, zv), n).is_mono())
      out.fail("H^" + std::to_string(n) + " of " + posets::beta(n, N) + " -> " + posets::zeta(n, N) + " is not injective");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition and reconstruction

LObject crown_decompose(const CyclicComplex& c) {
  const int N = c.N(), p = c.p();
  std::vector<CrownData> data;
  for (int n = 0; n < N; ++n) data.push_back(crown_data(c, n));
  FinPoset shape = posets::crown(N);
  std::vector<CyclicComplex> verts(shape.size());
  for (int n = 0; n < N; ++n) {
    verts[shape.index(zeta(n, N))] = two_term(data[wrap(n + 1, N)].onto_coboundaries, n, N);
    verts[shape.index(beta(n, N))] = CyclicComplex::concentrated(data[n].coboundaries, n, N);
  }
  std::vector<ChainMap> edges;
  for (auto [a, b] : shape.hasse()) {
    const int k = a, n = b - N;  // beta_k -> zeta_n
    if (k == n)
      edges.push_back(single_degree(verts[a], verts[b], n, data[n].coboundary_inclusion));
    else
      edges.push_back(single_degree(verts[a], verts[b], k, ModuleMap::identity(data[k].coboundaries)));
  }
  return LObject(cx_diagram(shape, p, N, std::move(verts), std::move(edges)));
}

CyclicComplex crown_assemble(const LObject& a) {
  const CxDiagram& x = a.diagram();
  if (!is_reedy_cofibrant(x)) return hocolim_cx(x);
  // For Reedy cofibrant diagrams the strict colimit computes the homotopy
  // colimit. When the zeta_n legs are isomorphisms in degree n we present it
  // in their bases.
  CxColimit col = strict_colim(x);
  const int N = a.N();
  std::vector<ModuleMap> legs;
  for (int n = 0; n < N; ++n) {
    legs.push_back(col.cocone[a.zeta(n)].at(n));
    if (!legs.back().is_iso()) return col.complex;
  }
  std::vector<FpModule> mods;
  std::vector<ModuleMap> d;
  for (int n = 0; n < N; ++n) {
    mods.push_back(legs[n].source());
    d.push_back(lift_through(col.complex.d(n) * legs[n], legs[wrap(n + 1, N)]));
  }
  return CyclicComplex(a.p(), std::move(mods), std::move(d));
}

Cylinder double_cylinder(const ChainMap& f1, const ChainMap& f2) {
  const CyclicComplex& x1 = f1.source();
  const CyclicComplex& x2 = f2.source();
  const CyclicComplex& z = f1.target();
  if (!(f2.target() == z)) throw CompositionError("cylinder: maps have different targets");
  const int N = z.N(), p = z.p();
  Cylinder out;
  for (int k = 0; k < N; ++k)
    out.layout.push_back(direct_sum({x1.module(k), x2.module(k), x1.module(k + 1), x2.module(k + 1), z.module(k)}, p));
  std::vector<FpModule> mods;
  std::vector<ModuleMap> d;
  for (int k = 0; k < N; ++k) {
    std::vector<std::vector<ModuleMap>> b(5, std::vector<ModuleMap>(5));
    b[0][0] = x1.d(k);
    b[0][2] = -ModuleMap::identity(x1.module(k + 1));
    b[1][1] = x2.d(k);
    b[1][3] = -ModuleMap::identity(x2.module(k + 1));
    b[2][2] = -x1.d(k + 1);
    b[3][3] = -x2.d(k + 1);
    b[4][2] = f1.at(k + 1);
    b[4][3] = f2.at(k + 1);
    b[4][4] = z.d(k);
    mods.push_back(out.layout[k].module);
    d.push_back(block_map(out.layout[k], out.layout[wrap(k + 1, N)], b));
  }
  out.complex = CyclicComplex(p, std::move(mods), std::move(d));
  std::vector<ModuleMap> i1, i2, pr;
  for (int k = 0; k < N; ++k) {
    const DirectSum& l = out.layout[k];
    i1.push_back(l.injection(0));
    i2.push_back(l.injection(1));
    pr.push_back(f1.at(k) * l.projection(0) + f2.at(k) * l.projection(1) + l.projection(4));
  }
  out.first = ChainMap(x1, out.complex, std::move(i1));
  out.second = ChainMap(x2, out.complex, std::move(i2));
  out.projection = ChainMap(out.complex, z, std::move(pr));
  return out;
}

CofibrantCrown cofibrant_crown(const LObject& a) {
  const CxDiagram& x = a.diagram();
  const FinPoset& shape = x.shape();
  const int N = a.N();
  CofibrantCrown out;
  std::vector<CyclicComplex> verts = x.vertices();
  for (int n = 0; n < N; ++n) {
    out.cylinders.push_back(double_cylinder(x.map(a.beta(n), a.zeta(n)), x.map(a.beta(n + 1), a.zeta(n))));
    verts[a.zeta(n)] = out.cylinders.back().complex;
  }
  std::vector<ChainMap> edges;
  for (auto [b, z] : shape.hasse()) {
    const int n = z - N;
    edges.push_back(b == n ? out.cylinders[n].first : out.cylinders[n].second);
  }
  CxDiagram cyl = cx_diagram(shape, a.p(), N, verts, std::move(edges));
  std::vector<ChainMap> comps;
  for (int v = 0; v < shape.size(); ++v)
    comps.push_back(v < N ? ChainMap::identity(verts[v]) : out.cylinders[v - N].projection);
  out.to_original = CxDiagramMap(cyl, x, std::move(comps));
  out.crown = LObject(std::move(cyl));
  return out;
}

QComplex q_complex(const CxDiagram& x) {
  const int N = x.zero_object().N();
  const FinPoset& c = x.shape();
  if (!(c == posets::crown(N))) throw ShapeMismatch("Q is defined over the crown");
  auto beta_at = [&](int n) { return c.index(beta(n, N)); };
  auto zeta_at = [&](int n) { return c.index(zeta(n, N)); };
  QComplex out;
  for (int n = 0; n < N; ++n) {
    out.cones.push_back(mapping_cone(x.map(beta_at(n + 1), zeta_at(n))));
    out.classes.push_back(cohomology_subquotient(out.cones.back().cone, n));
  }
  std::vector<FpModule> mods;
  std::vector<ModuleMap> d;
  for (int n = 0; n < N; ++n) {
    const int up = wrap(n + 1, N);
    const ModuleMap through =
        out.cones[up].inclusion.at(up) * x.map(beta_at(up), zeta_at(up)).at(up) * out.cones[n].projection.at(n);
    mods.push_back(out.classes[n].module());
    d.push_back(-induced_map(out.classes[n], out.classes[up], through.matrix()));
  }
  out.complex = CyclicComplex(x.zero_object().p(), std::move(mods), std::move(d));
  return out;
}

QComplex q_complex(const LObject& a) { return q_complex(a.diagram()); }

CyclicComplex Q(const LObject& a) { return q_complex(a).complex; }

RoundTrip round_trip(const CyclicComplex& c) {
  const int N = c.N();
  RoundTrip out;
  out.crown = crown_decompose(c);
  out.q = q_complex(out.crown);
  std::vector<ModuleMap> phi;
  for (int n = 0; n < N; ++n) {
    const DirectSum& lay = out.q.cones[n].layout[n];
    const CrownData next = crown_data(c, n + 1);
    const ModuleMap ambient = lay.injection(0) * (-next.onto_coboundaries) + lay.injection(1);
    phi.push_back(into_classes(c.module(n), out.q.classes[n], ambient));
  }
  out.comparison = ChainMap(c, out.q.complex, phi);
  out.comparison_iso = std::all_of(phi.begin(), phi.end(), [](const ModuleMap& f) { return f.is_iso(); });
  if (out.comparison_iso) {
    std::vector<ModuleMap> d;
    for (int n = 0; n < N; ++n) d.push_back(lift_through(out.q.complex.d(n) * phi[n], phi[wrap(n + 1, N)]));
    out.q_in_source_basis = CyclicComplex(c.p(), c.modules(), std::move(d));
    out.q_exact = out.q_in_source_basis == c;
  }
  out.colimit_in_source_basis = crown_assemble(out.crown);
  out.colimit_exact = out.colimit_in_source_basis == c;
  KanDoubleComplex dc = kan_double_complex(to_point(out.crown.diagram().shape()), out.crown.diagram());
  Totalization tot = totalize(dc, 0);
  out.hocolim_quasi_iso = is_quasi_iso(tot_to_strict(dc, tot, 0));
  return out;
}

// ---------------------------------------------------------------------------
// The smash pipeline

int SmashContext::pair(const std::string& a, const std::string& b) const {
  return crown.index(a) * crown.size() + crown.index(b);
}

ChainMap SmashContext::cocone(int c, int d) const {
  std::vector<ModuleMap> comps;
  for (int n = 0; n < N; ++n) {
    const ModColimit& col = e_levels[n].colimits.at(d);
    auto it = std::find(col.elements.begin(), col.elements.end(), c);
    if (it == col.elements.end()) throw NotMonotone("cocone: element does not lie over the vertex");
    comps.push_back(col.cocone(static_cast<int>(it - col.elements.begin())));
  }
  return ChainMap(product.at(c), e.at(d), std::move(comps));
}

SmashContext smash_context(const CyclicComplex& c, const CyclicComplex& c_tilde) {
  if (c.p() != c_tilde.p()) throw PrimeMismatch("smash: inputs use different primes");
  if (c.N() != c_tilde.N()) throw ShapeMismatch("smash: inputs have different periods");
  if (!c.is_flat() || !c_tilde.is_flat()) throw FlatnessViolation("smash: inputs must be flat");
  SmashContext ctx;
  ctx.p = c.p();
  ctx.N = c.N();
  ctx.c = c;
  ctx.c_tilde = c_tilde;
  ctx.a = crown_decompose(c);
  ctx.a_tilde = crown_decompose(c_tilde);
  ctx.crown = posets::crown(ctx.N);
  ctx.pr = posets::pr(ctx.N);
  ctx.cof = cofibrant_crown(ctx.a);
  ctx.cof_tilde = cofibrant_crown(ctx.a_tilde);
  ctx.product = diagram_tensor(ctx.cof.crown.diagram(), ctx.cof_tilde.crown.diagram());
  if (!(ctx.product.shape() == ctx.pr.source())) throw ShapeMismatch("smash: product shape differs from pr");
  std::vector<ModDiagram> levels;
  for (int n = 0; n < ctx.N; ++n) {
    ctx.e_levels.push_back(lkan_with_colimits(ctx.pr, level(ctx.product, n)));
    levels.push_back(ctx.e_levels.back().diagram);
  }
  std::vector<ModDiagramMap> d;
  for (int n = 0; n < ctx.N; ++n)
    d.push_back(lkan_map(ctx.e_levels[n], ctx.e_levels[wrap(n + 1, ctx.N)], level_differential(ctx.product, n)));
  ctx.e = assemble(levels, d, ctx.p);
  ctx.restricted = pullback(posets::i_map(ctx.N), ctx.e);
  for (int n = 0; n < ctx.N; ++n) {
    ctx.crown_c.push_back(crown_data(c, n));
    ctx.crown_ct.push_back(crown_data(c_tilde, n));
  }
  return ctx;
}

namespace {

/// x (x) y inside degree s+t of a tensor complex.
PVector tensor_vector(const CyclicTensor& t, int s, int tt, const PVector& x, const PVector& y) {
  PVector out = zero_vector(t.complex.module(s + tt).num_generators());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x(k).is_zero()) continue;
    for (Eigen::Index l = 0; l < y.size(); ++l) {
      if (y(l).is_zero()) continue;
      const int pos = t.position(s, tt, static_cast<int>(k), static_cast<int>(l));
      if (pos >= 0) out(pos) = out(pos) + x(k) * y(l);
    }
  }
  return out;
}

/// Generator i of C^s lifted to the cylinder of zeta_s as (0, -dc, c); its
/// differential is dc in the beta_{s+1} summand.
PVector cylinder_lift(const Cylinder& cyl, int s, const ModuleMap& onto, int i) {
  const DirectSum& lay = cyl.layout[wrap(s, cyl.complex.N())];
  PVector c = zero_vector(onto.source().num_generators());
  c(i) = PScalar(1);
  return lay.injection(4).apply(c) - lay.injection(3).apply(onto.apply(c));
}

}  // namespace

std::vector<ModuleMap> tensor_comparison(const SmashContext& ctx, const QComplex& q, const CyclicTensor& t) {
  const int N = ctx.N;
  const FinPoset& d = ctx.pr.target();
  const CxDiagram& a = ctx.cof.crown.diagram();
  const CxDiagram& at = ctx.cof_tilde.crown.diagram();
  std::map<int, CyclicTensor> tensors;
  auto vertex_tensor = [&](int v) -> const CyclicTensor& {
    auto it = tensors.find(v);
    if (it == tensors.end())
      it = tensors.emplace(v, tensor_cyclic(a.at(v / ctx.crown.size()), at.at(v % ctx.crown.size()))).first;
    return it->second;
  };
  auto leg = [&](int c, int target, int degree) {
    const ModColimit& col = ctx.e_levels[wrap(degree, N)].colimits.at(target);
    auto it = std::find(col.elements.begin(), col.elements.end(), c);
    if (it == col.elements.end()) throw NotMonotone("comparison: element does not lie over the vertex");
    return col.cocone(static_cast<int>(it - col.elements.begin()));
  };

  std::vector<ModuleMap> out;
  for (int m = 0; m < N; ++m) {
    const DirectSum& lay = q.cones[m].layout[m];
    const int zm = d.index(zeta(m, N)), gm = d.index(gamma(m + 1, N));
    PMatrix mat = zero_matrix(q.complex.module(m).num_generators(), t.complex.module(m).num_generators());
    for (int s = 0; s < N; ++s) {
      const int tt = wrap(m - s, N);
      const int zz = ctx.pair(zeta(s, N), zeta(tt, N));
      const int bz = ctx.pair(beta(s + 1, N), zeta(tt, N));
      const int zb = ctx.pair(zeta(s, N), beta(tt + 1, N));
      const CyclicTensor& tzz = vertex_tensor(zz);
      const CyclicTensor& tbz = vertex_tensor(bz);
      const CyclicTensor& tzb = vertex_tensor(zb);
      const ModuleMap lzz = leg(zz, zm, m), lbz = leg(bz, gm, m + 1), lzb = leg(zb, gm, m + 1);
      const ModuleMap& dc = ctx.crown_c[wrap(s + 1, N)].onto_coboundaries;
      const ModuleMap& dct = ctx.crown_ct[wrap(tt + 1, N)].onto_coboundaries;
      const bool even = koszul_sign(s) > 0;
      for (int i = 0; i < ctx.c.module(s).num_generators(); ++i) {
        const PVector ci = cylinder_lift(ctx.cof.cylinders[s], s, dc, i);
        PVector ei = zero_vector(dc.source().num_generators());
        ei(i) = PScalar(1);
        const PVector dci = dc.apply(ei);
        for (int j = 0; j < ctx.c_tilde.module(tt).num_generators(); ++j) {
          const int col = t.position(s, tt, i, j);
          if (col < 0) continue;
          const PVector cj = cylinder_lift(ctx.cof_tilde.cylinders[tt], tt, dct, j);
          PVector ej = zero_vector(dct.source().num_generators());
          ej(j) = PScalar(1);
          const PVector dcj = dct.apply(ej);
          const PVector v = lzz.apply(tensor_vector(tzz, s, tt, ci, cj));
          const PVector u1 = lbz.apply(tensor_vector(tbz, s + 1, tt, dci, cj));
          const PVector u2 = lzb.apply(tensor_vector(tzb, s, tt + 1, ci, dcj));
          const PVector u = even ? PVector(-u1 - u2) : PVector(u2 - u1);
          const PVector w = lay.injection(0).apply(u) + lay.injection(1).apply(v);
          mat.col(col) = q.classes[m].coordinates(w);
        }
      }
    }
    out.emplace_back(t.complex.module(m), q.complex.module(m), std::move(mat));
  }
  return out;
}

BzReport verify_bz(const SmashContext& ctx, int n) {
  const int N = ctx.N, p = ctx.p;
  n = wrap(n, N);
  const FinPoset& d = ctx.pr.target();
  const int zn = d.index(zeta(n, N)), gn = d.index(gamma(n, N));
  BzReport out;
  out.n = n;
  out.result.name = "BZ " + std::to_string(n);
  CheckResult& r = out.result;
  auto z = [&](int s) { return ctx.crown_c[wrap(s, N)].cocycles; };
  auto b = [&](int s) { return ctx.crown_c[wrap(s, N)].coboundaries; };
  auto zt = [&](int s) { return ctx.crown_ct[wrap(s, N)].cocycles; };
  auto bt = [&](int s) { return ctx.crown_ct[wrap(s, N)].coboundaries; };

  std::vector<FpModule> bb_next;
  for (int s = 0; s < N; ++s) bb_next.push_back(tensor(b(s), bt(n + 1 - s)).module);
  const FpModule expected_right = sum_of(bb_next, p);

  // zeta-row
  const FpModule hz = cohomology(ctx.e.at(zn), n);
  std::vector<ModuleMap> zblocks;
  std::vector<FpModule> zsrc, zexp;
  for (int s = 0; s < N; ++s) {
    const int c = ctx.pair(zeta(s, N), zeta(n - s, N));
    zblocks.push_back(induced_on_cohomology(ctx.cocone(c, zn), n));
    zsrc.push_back(zblocks.back().source());
    zexp.push_back(tensor(z(s), zt(n - s)).module);
  }
  const DirectSum zsum = direct_sum(zsrc, p);
  const DirectSum zone = direct_sum({hz}, p);
  const ModuleMap alpha = block_map(zsum, zone, {zblocks});
  const Subquotients za = subquotients(alpha);
  out.zeta = {zsum.module, hz, za.cokernel, sum_of(zexp, p), expected_right};
  if (out.zeta.left != out.zeta.expected_left)
    r.fail("zeta row: left term " + out.zeta.left.to_string() + " != " + out.zeta.expected_left.to_string());
  if (!alpha.is_mono()) r.fail("zeta row: left map is not injective");
  if (out.zeta.right != expected_right)
    r.fail("zeta row: cokernel " + out.zeta.right.to_string() + " != " + expected_right.to_string());

  // gamma-row
  const FpModule hg = cohomology(ctx.e.at(gn), n);
  std::vector<ModuleMap> gblocks;
  std::vector<FpModule> gsrc, bb_here, pieces;
  std::vector<std::vector<ModuleMap>> glue;
  for (int s = 0; s < N; ++s) {
    const int tt = wrap(n - s, N);
    for (int c : {ctx.pair(zeta(s, N), beta(tt, N)), ctx.pair(beta(s, N), zeta(tt, N))}) {
      gblocks.push_back(induced_on_cohomology(ctx.cocone(c, gn), n));
      gsrc.push_back(gblocks.back().source());
    }
    bb_here.push_back(tensor(b(s), bt(tt)).module);
    pieces.push_back(tensor(z(s), bt(tt)).module);
    pieces.push_back(tensor(b(s), zt(tt)).module);
  }
  const DirectSum bb_sum = direct_sum(bb_here, p);
  const DirectSum piece_sum = direct_sum(pieces, p);
  std::vector<std::vector<ModuleMap>> gl(2 * N, std::vector<ModuleMap>(N));
  for (int s = 0; s < N; ++s) {
    const int tt = wrap(n - s, N);
    gl[2 * s][s] = tensor_maps(ctx.crown_c[s].boundary_in_cocycles, ModuleMap::identity(bt(tt)));
    gl[2 * s + 1][s] = -tensor_maps(ModuleMap::identity(b(s)), ctx.crown_ct[tt].boundary_in_cocycles);
  }
  const FpModule pushout = subquotients(block_map(bb_sum, piece_sum, gl)).cokernel;
  const DirectSum gsum = direct_sum(gsrc, p);
  const DirectSum gone = direct_sum({hg}, p);
  const ModuleMap beta_map = block_map(gsum, gone, {gblocks});
  const Subquotients gb = subquotients(beta_map);
  out.gamma = {gb.image, hg, gb.cokernel, pushout, expected_right};
  if (gb.image != pushout) r.fail("gamma row: image " + gb.image.to_string() + " != " + pushout.to_string());
  if (gb.cokernel != expected_right)
    r.fail("gamma row: cokernel " + gb.cokernel.to_string() + " != " + expected_right.to_string());

  // gamma_n -> zeta_n
  const ModuleMap g = induced_on_cohomology(ctx.e.map(gn, zn), n);
  out.vertical_mono = g.is_mono();
  out.vertical_kernel = subquotients(g).kernel;
  std::vector<FpModule> tors;
  for (int s = 0; s < N; ++s) tors.push_back(tor(cohomology(ctx.c, s), cohomology(ctx.c_tilde, n - s)));
  out.expected_vertical_kernel = sum_of(tors, p);
  try {
    const ModuleMap h = descend_through(za.cokernel_projection * g, gb.cokernel_projection);
    out.cokernels_iso = h.is_iso();
    if (!out.cokernels_iso) r.fail("the map of cokernels is not an isomorphism");
  } catch (const Error& e) {
    r.fail(std::string("the rows are not compatible: ") + e.what());
  }
  return out;
}

ButterflyReport butterfly_sseq(const SmashContext& ctx, int n) {
  const int N = ctx.N, p = ctx.p;
  n = wrap(n, N);
  const FinPoset& d = ctx.pr.target();
  const int zn = d.index(zeta(n, N)), gn = d.index(gamma(n, N));
  ButterflyReport out;
  out.n = n;
  out.result.name = "butterfly " + std::to_string(n);
  const SubPoset slice = slice_to(ctx.pr, zn);
  const CxDiagram x = restrict(ctx.product, slice);
  const KanDoubleComplex dc = kan_double_complex(posets::p_edge(ctx.pr, gn, zn), x);
  out.sseq = spectral_sequence(dc, 1);
  CheckResult& r = out.result;
  const SpectralSequence& ss = out.sseq;
  if (ss.pages.size() >= 2)
    for (const auto& [key, m] : ss.page(2).cells)
      if (key.first < -1 && !m.is_zero())
        r.fail("E_2 has " + m.to_string() + " in column " + std::to_string(key.first));
  if (ss.pages.back().cells != ss.e_infinity.cells) r.fail("last page differs from E_infinity");
  std::vector<FpModule> zz, bb;
  for (int s = 0; s < N; ++s) {
    zz.push_back(tensor(ctx.crown_c[s].cocycles, ctx.crown_ct[wrap(n - s, N)].cocycles).module);
    bb.push_back(tensor(ctx.crown_c[s].coboundaries, ctx.crown_ct[wrap(n + 1 - s, N)].coboundaries).module);
  }
  const FpModule ez = sum_of(zz, p), eb = sum_of(bb, p);
  for (const auto& [key, m] : ss.e_infinity.cells) {
    const auto [s, t] = key;
    FpModule want = FpModule::zero(p);
    if (s == 0 && t == n) want = ez;
    if (s == -1 && t == wrap(n + 1, N)) want = eb;
    if (m != want)
      r.fail("E_infinity at (" + std::to_string(s) + "," + std::to_string(t) + ") is " + m.to_string() +
             ", expected " + want.to_string());
  }
  return out;
}

bool PipelineReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
}

PipelineReport smash_pipeline(const CyclicComplex& c_in, const CyclicComplex& ct_in, const PipelineOptions& options) {
  PipelineReport rep;
  rep.c = c_in;
  rep.c_tilde = ct_in;
  for (CyclicComplex* x : {&rep.c, &rep.c_tilde}) {
    if (x->is_flat()) continue;
    if (!options.auto_flat) throw FlatnessViolation("smash: input is not flat");
    *x = flat_replacement(*x).complex;
    rep.replaced = true;
  }
  if (rep.replaced) rep.notes.push_back("non-flat input replaced by a flat resolution");
  rep.context = smash_context(rep.c, rep.c_tilde);
  const SmashContext& ctx = rep.context;
  const int N = ctx.N;

  auto add = [&](const std::string& anchor, const std::string& name, bool ok,
                 std::vector<std::pair<std::string, std::string>> witness) {
    rep.checks.push_back({anchor, name, ok, std::move(witness)});
  };

  add("Reedy cofibrant product", "A (x) A~ is Reedy cofibrant", is_reedy_cofibrant(ctx.product), {});

  CheckResult l = LObject::check(ctx.restricted);
  {
    std::vector<std::pair<std::string, std::string>> w;
    for (const auto& note : l.notes) w.emplace_back("failure", note);
    add("L-membership of i*E", "i*E lies in L", l.passed, std::move(w));
  }

  rep.q = q_complex(ctx.restricted);
  rep.tensor = tensor_cyclic(rep.c, rep.c_tilde);

  {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> w;
    for (int m = 0; m < N; ++m) {
      const FpModule& a = rep.q.complex.module(m);
      const FpModule& b = rep.tensor.complex.module(m);
      w.emplace_back("Q^" + std::to_string(m), a.to_string());
      ok = ok && a == b;
    }
    add("object identification", "Q(i*E)^n = sum of C^s (x) C~^t", ok, std::move(w));
  }

  {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> w;
    try {
      rep.comparison = tensor_comparison(ctx, rep.q, rep.tensor);
      ChainMap phi(rep.tensor.complex, rep.q.complex, rep.comparison);
      for (int m = 0; m < N; ++m) ok = ok && phi.at(m).is_iso();
      w.emplace_back("chain map", "yes");
      w.emplace_back("isomorphism", ok ? "yes" : "no");
    } catch (const Error& e) {
      ok = false;
      rep.comparison.clear();
      w.emplace_back("failure", e.what());
    }
    add("chain comparison", "C (x) C~ -> Q(i*E) is a chain isomorphism", ok, std::move(w));
  }

  {
    const auto hq = cohomology_all(rep.q.complex);
    const auto ht = cohomology_all(rep.tensor.complex);
    const auto hk = kunneth_oracle(rep.c, rep.c_tilde);
    bool ok = hq == ht && hq == hk;
    std::vector<std::pair<std::string, std::string>> w{
        {"H(Q(i*E))", modules_string(hq)}, {"H(C (x) C~)", modules_string(ht)}, {"Kunneth", modules_string(hk)}};
    if (rep.replaced) {
      const auto hd = cohomology_all(derived_tensor(c_in, ct_in));
      w.emplace_back("derived tensor", modules_string(hd));
      ok = ok && hq == hd;
    }
    add("cohomology comparison", "H(Q(i*E)) = H(C (x) C~)", ok, std::move(w));
  }

  for (int n = 0; n < N; ++n) {
    rep.bz.push_back(verify_bz(ctx, n));
    const BzReport& b = rep.bz.back();
    std::vector<std::pair<std::string, std::string>> w{{"H^n(E_zeta)", b.zeta.middle.to_string()},
                                                       {"Z (x) Z~", b.zeta.expected_left.to_string()},
                                                       {"B (x) B~", b.zeta.expected_right.to_string()},
                                                       {"H^n(E_gamma)", b.gamma.middle.to_string()},
                                                       {"ker H^n(gamma_n -> zeta_n)", b.vertical_kernel.to_string()}};
    for (const auto& note : b.result.notes) w.emplace_back("failure", note);
    add("BZ exactness", "BZ rows in degree " + std::to_string(n), b.result.passed, std::move(w));
    add("Tor defect", "ker H^" + std::to_string(n) + "(gamma_n -> zeta_n) = sum of Tor(H^s, H~^t)",
        b.vertical_kernel == b.expected_vertical_kernel,
        {{"kernel", b.vertical_kernel.to_string()}, {"Tor", b.expected_vertical_kernel.to_string()}});
  }

  if (options.cofinality) {
    const auto hd = cohomology_all(hocolim_cx(ctx.e));
    const auto hc = cohomology_all(hocolim_cx(ctx.restricted));
    add("cofinality of i", "H(hocolim_D E) = H(hocolim_C i*E)", hd == hc,
        {{"over D_N", modules_string(hd)}, {"over C_N", modules_string(hc)}});
  }

  if (options.butterflies) {
    for (int n = 0; n < N; ++n) {
      ButterflyReport b = butterfly_sseq(ctx, n);
      std::vector<std::pair<std::string, std::string>> w;
      for (const auto& [key, m] : b.sseq.e_infinity.cells)
        if (!m.is_zero())
          w.emplace_back("E_inf(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")", m.to_string());
      for (const auto& note : b.result.notes) w.emplace_back("failure", note);
      add("butterfly spectral sequence", "slice over zeta_" + std::to_string(n), b.result.passed, std::move(w));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Equatorial embedding

EquatorialReport equatorial_report(const CyclicComplex& x) {
  const int N = x.N(), p = x.p();
  const CyclicComplex zero = CyclicComplex::zero(p, N);
  const FinPoset v = posets::vee();
  const FinPoset i = posets::interval();
  const FinPoset shape = product(v, i);
  const int corner = v.index("(0,0)");
  const int left = v.index("(1,0)"), right = v.index("(0,1)");
  auto at = [&](int a, int b) { return a * i.size() + b; };

  // Y_0 = (X <- X -> X) maps to Y_1 = (0 <- X -> 0); K is the vertexwise cone.
  std::vector<Cone> k(v.size());
  std::vector<CyclicComplex> verts(shape.size());
  for (int a = 0; a < v.size(); ++a) {
    const CyclicComplex& y1 = a == corner ? x : zero;
    k[a] = mapping_cone(a == corner ? ChainMap::identity(x) : ChainMap::zero(x, zero));
    verts[at(a, 0)] = y1;
    verts[at(a, 1)] = k[a].cone;
  }
  std::vector<ChainMap> edges;
  for (auto [s, t] : shape.hasse()) {
    const int va = s / i.size(), ia = s % i.size(), vb = t / i.size();
    if (va == vb) {
      edges.push_back(k[va].inclusion);
    } else if (ia == 0) {
      edges.push_back(ChainMap::zero(verts[s], verts[t]));
    } else {
      // cone(id_X) -> cone(X -> 0): identity on the shifted source, zero on the target
      std::vector<ModuleMap> comps;
      for (int n = 0; n < N; ++n)
        comps.push_back(block_map(k[va].layout[n], k[vb].layout[n],
                                  {{ModuleMap::identity(x.module(n + 1)), ModuleMap()}, {ModuleMap(), ModuleMap()}}));
      edges.emplace_back(verts[s], verts[t], std::move(comps));
    }
  }
  const CxDiagram z = cx_diagram(shape, p, N, std::move(verts), std::move(edges));
  std::vector<int> images;
  for (int c = 0; c < shape.size(); ++c) images.push_back(c % i.size());
  const KanDoubleComplex dc = kan_double_complex(PosetMap(shape, i, images), z);
  const Totalization t0 = totalize(dc, 0), t1 = totalize(dc, 1);
  const ChainMap edge = tot_edge(dc, t0, t1, 0, 1);
  const ChainMap l1 = tot_leg(dc, t1, z, at(left, 1), 1);
  const ChainMap l2 = tot_leg(dc, t1, z, at(right, 1), 1);
  const CyclicComplex sx = shift(x, 1);

  EquatorialReport out;
  out.legs_iso = out.diagonal = out.antidiagonal = out.cone_matches = true;
  for (int n = 0; n < N; ++n) {
    const ModuleMap e = induced_on_cohomology(edge, n);
    const ModuleMap a = induced_on_cohomology(l1, n), b = induced_on_cohomology(l2, n);
    const DirectSum legs = direct_sum({a.source(), b.source()}, p);
    const ModuleMap ell = block_map(legs, direct_sum({a.target()}, p), {{a, b}});
    if (!ell.is_iso()) {
      out.legs_iso = out.diagonal = out.antidiagonal = false;
      continue;
    }
    const ModuleMap u = lift_through(e, ell);
    out.first.push_back(legs.projection(0) * u);
    out.second.push_back(legs.projection(1) * u);
    const bool iso = out.first.back().is_iso();
    if (!(out.first.back() == out.second.back() && iso)) out.diagonal = false;
    if (!(out.first.back() == -out.second.back() && iso)) out.antidiagonal = false;
    if (e.source() != cohomology(sx, n)) out.cone_matches = false;
  }
  return out;
}

bool equatorial_check(const CyclicComplex& x) { return equatorial_report(x).passed(); }

// ---------------------------------------------------------------------------
// The two-term case

namespace {

/// The (s,t)-summand of the degree s+t differential of Q(i*E), read in the
/// bases of C (x) C~ through the chain comparison.
ModuleMap transported_block(const PipelineReport& rep, int s, int m) {
  const int N = rep.tensor.complex.N();
  if (rep.comparison.empty()) throw MapNotWellDefined("pipeline has no chain comparison");
  return lift_through(rep.q.complex.d(m) * rep.comparison[wrap(m, N)] * rep.tensor.layout[wrap(m, N)].injection(wrap(s, N)),
                      rep.comparison[wrap(m + 1, N)]);
}

}  // namespace

SpecialCaseReport special_case_differential(const CyclicComplex& c, int s, const CyclicComplex& c_tilde, int t) {
  const int N = c.N();
  if (!c.is_flat() || !c_tilde.is_flat()) throw FlatnessViolation("special case: inputs must be flat");
  s = wrap(s, N);
  t = wrap(t, N);
  const int m = wrap(s + t, N);
  const PipelineOptions quick{false, false, false};
  SpecialCaseReport out;
  out.s = s;
  out.t = t;
  out.koszul = koszul_sign(s);

  {
    const PipelineReport rep = smash_pipeline(contractible_complex(c.module(s), s, N),
                                              contractible_complex(c_tilde.module(t), t, N), quick);
    const CyclicTensor& tn = rep.tensor;
    const ModuleMap id = ModuleMap::identity(tn.products[m][s].module);
    out.expected_special = tn.layout[wrap(m + 1, N)].injection(wrap(s + 1, N)) * id +
                           (tn.layout[wrap(m + 1, N)].injection(s) * id).scaled(PScalar(out.koszul));
    if (!rep.comparison.empty()) {
      out.special_differential = transported_block(rep, s, m);
      out.special_ok = out.special_differential == out.expected_special;
    }
  }
  {
    const PipelineReport rep = smash_pipeline(c, c_tilde, quick);
    const CyclicTensor& tn = rep.tensor;
    const int up = wrap(m + 1, N);
    out.expected_general =
        tn.layout[up].injection(wrap(s + 1, N)) *
            tensor_maps(c.d(s), ModuleMap::identity(c_tilde.module(t)), tn.products[m][s], tn.products[up][wrap(s + 1, N)]) +
        (tn.layout[up].injection(s) *
         tensor_maps(ModuleMap::identity(c.module(s)), c_tilde.d(t), tn.products[m][s], tn.products[up][s]))
            .scaled(PScalar(out.koszul));
    if (!rep.comparison.empty()) {
      out.general_differential = transported_block(rep, s, m);
      out.general_ok = out.general_differential == out.expected_general;
    }
  }
  return out;
}

CyclicComplex moore_example(int p) {
  if (p != 3) throw Unsupported("the Moore example is provided for p = 3 only");
  return moore_complex(p);
}

}  // namespace kanlim
