#include "kanlim/complexes/complex.hpp"

#include <map>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim {

CyclicComplex::CyclicComplex(int p, std::vector<FpModule> modules, std::vector<ModuleMap> differentials)
    : p_(p), modules_(std::move(modules)), differentials_(std::move(differentials)) {
  const int n = N();
  if (n < 2 || n % 2 != 0) throw InvalidComplex("period must be even and positive, got " + std::to_string(n));
  if (static_cast<int>(differentials_.size()) != n) throw InvalidComplex("need one differential per degree");
  for (int k = 0; k < n; ++k) {
    if (modules_[k].p() != p) throw PrimeMismatch("module in degree " + std::to_string(k) + " uses another prime");
    if (differentials_[k].source() != modules_[k] || differentials_[k].target() != modules_[wrap(k + 1, n)])
      throw InvalidComplex("differential d^" + std::to_string(k) + " has the wrong source or target");
  }
  for (int k = 0; k < n; ++k)
    if (!(differentials_[wrap(k + 1, n)] * differentials_[k]).is_zero())
      throw InvalidComplex("d^" + std::to_string(wrap(k + 1, n)) + " d^" + std::to_string(k) + " is not zero");
}

CyclicComplex CyclicComplex::zero(int p, int N) {
  return concentrated(FpModule::zero(p), 0, N);
}

CyclicComplex CyclicComplex::concentrated(const FpModule& m, int degree, int N) {
  std::vector<FpModule> mods(static_cast<std::size_t>(N), FpModule::zero(m.p()));
  mods[wrap(degree, N)] = m;
  std::vector<ModuleMap> ds;
  for (int k = 0; k < N; ++k) ds.push_back(ModuleMap::zero(mods[k], mods[wrap(k + 1, N)]));
  return CyclicComplex(m.p(), std::move(mods), std::move(ds));
}

CyclicComplex CyclicComplex::unit(int p, int N) { return concentrated(FpModule::free(p, 1), 0, N); }

bool CyclicComplex::is_flat() const {
  for (const auto& m : modules_)
    if (!m.is_flat()) return false;
  return true;
}

bool CyclicComplex::is_zero() const {
  for (const auto& m : modules_)
    if (!m.is_zero()) return false;
  return true;
}

bool operator==(const CyclicComplex& a, const CyclicComplex& b) {
  if (a.p_ != b.p_ || a.modules_ != b.modules_) return false;
  for (std::size_t k = 0; k < a.differentials_.size(); ++k)
    if (a.differentials_[k] != b.differentials_[k]) return false;
  return true;
}

ChainMap::ChainMap(CyclicComplex source, CyclicComplex target, std::vector<ModuleMap> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  const int n = source_.N();
  if (target_.N() != n || static_cast<int>(components_.size()) != n)
    throw CompositionError("chain map components do not match the period");
  for (int k = 0; k < n; ++k) {
    if (components_[k].source() != source_.module(k) || components_[k].target() != target_.module(k))
      throw CompositionError("chain map component " + std::to_string(k) + " has the wrong source or target");
  }
  for (int k = 0; k < n; ++k)
    if (target_.d(k) * components_[k] != components_[wrap(k + 1, n)] * source_.d(k))
      throw MapNotWellDefined("chain map does not commute with the differential in degree " + std::to_string(k));
}

ChainMap ChainMap::identity(const CyclicComplex& c) {
  std::vector<ModuleMap> f;
  for (int k = 0; k < c.N(); ++k) f.push_back(ModuleMap::identity(c.module(k)));
  return ChainMap(c, c, std::move(f));
}

ChainMap ChainMap::zero(const CyclicComplex& source, const CyclicComplex& target) {
  std::vector<ModuleMap> f;
  for (int k = 0; k < source.N(); ++k) f.push_back(ModuleMap::zero(source.module(k), target.module(k)));
  return ChainMap(source, target, std::move(f));
}

bool ChainMap::is_zero() const {
  for (const auto& f : components_)
    if (!f.is_zero()) return false;
  return true;
}

ChainMap ChainMap::compose(const ChainMap& g) const {
  if (g.target_ != source_) throw CompositionError("chain maps do not compose");
  std::vector<ModuleMap> f;
  for (int k = 0; k < source_.N(); ++k) f.push_back(components_[k] * g.components_[k]);
  return ChainMap(g.source_, target_, std::move(f));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  std::vector<ModuleMap> f;
  for (int k = 0; k < source_.N(); ++k) f.push_back(components_[k] + o.components_[k]);
  return ChainMap(source_, target_, std::move(f));
}

ChainMap ChainMap::operator-() const {
  std::vector<ModuleMap> f;
  for (const auto& c : components_) f.push_back(-c);
  return ChainMap(source_, target_, std::move(f));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) return false;
  for (std::size_t k = 0; k < a.components_.size(); ++k)
    if (a.components_[k] != b.components_[k]) return false;
  return true;
}

Subquotient cohomology_subquotient(const CyclicComplex& c, int n) {
  const FpModule& here = c.module(n);
  const int gens = here.num_generators();
  auto cocycles = kernel_top(with_relations(c.d(n).matrix(), c.module(n + 1)), c.module(n + 1).num_generators(),
                             gens, c.p());
  auto coboundaries = with_relations(c.d(n - 1).matrix(), here);
  return Subquotient(std::move(cocycles), coboundaries, gens, c.p());
}

FpModule cohomology(const CyclicComplex& c, int n) { return cohomology_subquotient(c, n).module(); }

std::vector<FpModule> cohomology_all(const CyclicComplex& c) {
  std::vector<FpModule> out;
  for (int n = 0; n < c.N(); ++n) out.push_back(cohomology(c, n));
  return out;
}

ModuleMap induced_on_cohomology(const ChainMap& f, int n) {
  return induced_map(cohomology_subquotient(f.source(), n), cohomology_subquotient(f.target(), n),
                     f.at(n).matrix());
}

bool is_quasi_iso(const ChainMap& f) {
  for (int n = 0; n < f.source().N(); ++n)
    if (!induced_on_cohomology(f, n).is_iso()) return false;
  return true;
}

bool is_acyclic(const CyclicComplex& c) {
  for (int n = 0; n < c.N(); ++n)
    if (!cohomology(c, n).is_zero()) return false;
  return true;
}

CrownData crown_data(const CyclicComplex& c, int n) {
  CrownData out;
  Subquotients cur = subquotients(c.d(n));
  Subquotients prev = subquotients(c.d(n - 1));
  out.cocycles = cur.kernel;
  out.cocycle_inclusion = cur.kernel_inclusion;
  out.coboundaries = prev.image;
  out.coboundary_inclusion = prev.image_inclusion;
  out.onto_coboundaries = prev.corestriction;
  out.boundary_in_cocycles = lift_through(prev.image_inclusion, cur.kernel_inclusion);
  return out;
}

CyclicComplex shift(const CyclicComplex& c, int k) {
  const int N = c.N();
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) {
    mods.push_back(c.module(n + k));
    ds.push_back(koszul_sign(k) > 0 ? c.d(n + k) : -c.d(n + k));
  }
  return CyclicComplex(c.p(), std::move(mods), std::move(ds));
}

ChainMap shift(const ChainMap& f, int k) {
  std::vector<ModuleMap> comps;
  for (int n = 0; n < f.source().N(); ++n) comps.push_back(f.at(n + k));
  return ChainMap(shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

Cone mapping_cone(const ChainMap& f) {
  const CyclicComplex& x = f.source();
  const CyclicComplex& y = f.target();
  const int N = x.N();
  const int p = x.p();
  Cone out;
  for (int n = 0; n < N; ++n) out.layout.push_back(direct_sum({x.module(n + 1), y.module(n)}, p));
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) {
    mods.push_back(out.layout[n].module);
    ds.push_back(block_map(out.layout[n], out.layout[wrap(n + 1, N)],
                           {{-x.d(n + 1), ModuleMap()}, {f.at(n + 1), y.d(n)}}));
  }
  out.cone = CyclicComplex(p, std::move(mods), std::move(ds));
  std::vector<ModuleMap> inc, proj;
  for (int n = 0; n < N; ++n) {
    inc.push_back(out.layout[n].injection(1));
    proj.push_back(out.layout[n].projection(0));
  }
  out.inclusion = ChainMap(y, out.cone, std::move(inc));
  out.projection = ChainMap(out.cone, shift(x, 1), std::move(proj));
  return out;
}

ComplexSum complex_sum(const std::vector<CyclicComplex>& parts, int p, int N) {
  ComplexSum out;
  for (int n = 0; n < N; ++n) {
    std::vector<FpModule> ms;
    for (const auto& c : parts) ms.push_back(c.module(n));
    out.layout.push_back(direct_sum(ms, p));
  }
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) {
    std::vector<std::vector<ModuleMap>> blocks(parts.size(), std::vector<ModuleMap>(parts.size()));
    for (std::size_t k = 0; k < parts.size(); ++k) blocks[k][k] = parts[k].d(n);
    mods.push_back(out.layout[n].module);
    ds.push_back(block_map(out.layout[n], out.layout[wrap(n + 1, N)], blocks));
  }
  out.complex = CyclicComplex(p, std::move(mods), std::move(ds));
  return out;
}

ChainMap ComplexSum::injection(std::size_t k, const std::vector<CyclicComplex>& parts) const {
  std::vector<ModuleMap> f;
  for (int n = 0; n < complex.N(); ++n) f.push_back(layout[n].injection(k));
  return ChainMap(parts.at(k), complex, std::move(f));
}

ChainMap ComplexSum::projection(std::size_t k, const std::vector<CyclicComplex>& parts) const {
  std::vector<ModuleMap> f;
  for (int n = 0; n < complex.N(); ++n) f.push_back(layout[n].projection(k));
  return ChainMap(complex, parts.at(k), std::move(f));
}

int CyclicTensor::position(int s, int t, int i, int j) const {
  const int N = complex.N();
  const int n = wrap(s + t, N);
  s = wrap(s, N);
  return layout[n].index[s][products[n][s].index[i][j]];
}

CyclicTensor tensor_cyclic(const CyclicComplex& c, const CyclicComplex& d) {
  if (c.p() != d.p()) throw PrimeMismatch("tensor of complexes over different primes");
  if (c.N() != d.N()) throw ShapeMismatch("tensor of complexes with different periods");
  const int N = c.N();
  const int p = c.p();
  CyclicTensor out;
  out.left = c;
  out.right = d;
  out.products.resize(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    std::vector<FpModule> ms;
    for (int s = 0; s < N; ++s) {
      out.products[n].push_back(tensor(c.module(s), d.module(n - s)));
      ms.push_back(out.products[n].back().module);
    }
    out.layout.push_back(direct_sum(ms, p));
  }
  std::vector<FpModule> mods;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) {
    const int next = wrap(n + 1, N);
    std::vector<std::vector<ModuleMap>> blocks(static_cast<std::size_t>(N), std::vector<ModuleMap>(N));
    for (int s = 0; s < N; ++s) {
      const int t = wrap(n - s, N);
      blocks[wrap(s + 1, N)][s] = tensor_maps(c.d(s), ModuleMap::identity(d.module(t)), out.products[n][s],
                                              out.products[next][wrap(s + 1, N)]);
      ModuleMap right = tensor_maps(ModuleMap::identity(c.module(s)), d.d(t), out.products[n][s],
                                    out.products[next][s]);
      blocks[s][s] = koszul_sign(s) > 0 ? right : -right;
    }
    mods.push_back(out.layout[n].module);
    ds.push_back(block_map(out.layout[n], out.layout[next], blocks));
  }
  out.complex = CyclicComplex(p, std::move(mods), std::move(ds));
  return out;
}

ChainMap tensor_chain_maps(const ChainMap& f, const ChainMap& g, const CyclicTensor& src, const CyclicTensor& tgt) {
  const int N = src.complex.N();
  std::vector<ModuleMap> comps;
  for (int n = 0; n < N; ++n) {
    std::vector<std::vector<ModuleMap>> blocks(static_cast<std::size_t>(N), std::vector<ModuleMap>(N));
    for (int s = 0; s < N; ++s)
      blocks[s][s] = tensor_maps(f.at(s), g.at(n - s), src.products[n][s], tgt.products[n][s]);
    comps.push_back(block_map(src.layout[n], tgt.layout[n], blocks));
  }
  return ChainMap(src.complex, tgt.complex, std::move(comps));
}

namespace {

/// Relation lattice inclusion K -> F for a canonical module: p^e on the
/// diagonal of the torsion generators.
PMatrix relation_inclusion(const FpModule& m) {
  const int t = static_cast<int>(m.torsion().size());
  PMatrix out = zero_matrix(m.num_generators(), t);
  for (int i = 0; i < t; ++i) out(i, i) = prime_power(m.p(), m.torsion()[i]);
  return out;
}

/// Solve iota X = M for X, where every column of M lies in the relation
/// lattice of `m`.
PMatrix divide_by_relations(const PMatrix& mat, const FpModule& m) {
  const int t = static_cast<int>(m.torsion().size());
  PMatrix out = zero_matrix(t, mat.cols());
  for (Eigen::Index j = 0; j < mat.cols(); ++j) {
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      if (mat(i, j).is_zero()) continue;
      if (i >= t) throw InvalidComplex("matrix does not land in the relation lattice");
      PScalar q = mat(i, j) / prime_power(m.p(), m.torsion()[i]);
      if (!q.is_plocal(m.p())) throw InvalidComplex("matrix does not land in the relation lattice");
      out(i, j) = q;
    }
  }
  return out;
}

PMatrix blocks2(const PMatrix& a, const PMatrix& b, const PMatrix& c, const PMatrix& d) {
  PMatrix out = zero_matrix(a.rows() + c.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.topRightCorner(b.rows(), b.cols()) = b;
  out.bottomLeftCorner(c.rows(), c.cols()) = c;
  out.bottomRightCorner(d.rows(), d.cols()) = d;
  return out;
}

}  // namespace

FlatReplacement flat_replacement(const CyclicComplex& c) {
  const int N = c.N();
  const int p = c.p();
  auto tors = [&](int m) { return static_cast<int>(c.module(m).torsion().size()); };
  auto gens = [&](int m) { return c.module(m).num_generators(); };
  // P^n = K^{n+1} + F^n with K the relation lattice and F the free cover.
  std::vector<FpModule> mods;
  for (int n = 0; n < N; ++n) mods.push_back(FpModule::free(p, tors(n + 1) + gens(n)));
  std::vector<ModuleMap> ds, qs;
  for (int n = 0; n < N; ++n) {
    const PMatrix& dn = c.d(n).matrix();
    PMatrix kappa = divide_by_relations(multiply(c.d(n + 1).matrix(), relation_inclusion(c.module(n + 1))),
                                        c.module(n + 2));
    PMatrix h = divide_by_relations(multiply(c.d(n + 1).matrix(), dn), c.module(n + 2));
    ds.push_back(ModuleMap(mods[n], mods[wrap(n + 1, N)],
                           blocks2(-kappa, -h, relation_inclusion(c.module(n + 1)), dn)));
    qs.push_back(ModuleMap(mods[n], c.module(n),
                           blocks2(zero_matrix(0, tors(n + 1)), zero_matrix(0, gens(n)),
                                   zero_matrix(gens(n), tors(n + 1)), identity_matrix(gens(n)))));
  }
  CyclicComplex pc(p, mods, std::move(ds));
  return {pc, ChainMap(pc, c, std::move(qs))};
}

ChainMap flat_replacement_map(const ChainMap& f, const FlatReplacement& src, const FlatReplacement& tgt) {
  const CyclicComplex& c = f.source();
  const CyclicComplex& d = f.target();
  std::vector<ModuleMap> comps;
  for (int n = 0; n < c.N(); ++n) {
    PMatrix kf = divide_by_relations(multiply(f.at(n + 1).matrix(), relation_inclusion(c.module(n + 1))),
                                     d.module(n + 1));
    PMatrix corr = divide_by_relations(
        multiply(f.at(n + 1).matrix(), c.d(n).matrix()) - multiply(d.d(n).matrix(), f.at(n).matrix()),
        d.module(n + 1));
    PMatrix ff = f.at(n).matrix();
    comps.push_back(ModuleMap(src.complex.module(n), tgt.complex.module(n),
                              blocks2(kf, corr, zero_matrix(ff.rows(), kf.cols()), ff)));
  }
  return ChainMap(src.complex, tgt.complex, std::move(comps));
}

CyclicComplex derived_tensor(const CyclicComplex& c, const CyclicComplex& d) {
  return tensor_cyclic(flat_replacement(c).complex, flat_replacement(d).complex).complex;
}

std::vector<FpModule> kunneth_oracle(const CyclicComplex& c, const CyclicComplex& d) {
  if (!c.is_flat() || !d.is_flat()) throw FlatnessViolation("Kunneth formula needs flat complexes");
  if (c.N() != d.N()) throw ShapeMismatch("complexes with different periods");
  const int N = c.N();
  auto hc = cohomology_all(c);
  auto hd = cohomology_all(d);
  std::vector<FpModule> out;
  for (int n = 0; n < N; ++n) {
    std::vector<FpModule> parts;
    for (int s = 0; s < N; ++s) {
      parts.push_back(tensor(hc[s], hd[wrap(n - s, N)]).module);
      parts.push_back(tor(hc[s], hd[wrap(n + 1 - s, N)]));
    }
    out.push_back(direct_sum(parts, c.p()).module);
  }
  return out;
}

}  // namespace kanlim

namespace kanlim {

std::vector<ChainMap> chain_map_generators(const CyclicComplex& x, const CyclicComplex& y) {
  const int N = x.N();
  const int p = x.p();
  if (y.N() != N || y.p() != p) throw ShapeMismatch("chain maps between incompatible complexes");
  // Equation (n, t, s): entry (t, s) of d_Y^n F^n - F^{n+1} d_X^n, t in Y^{n+1}, s in X^n.
  std::vector<int> eq_offset(static_cast<std::size_t>(N) + 1, 0);
  for (int n = 0; n < N; ++n)
    eq_offset[n + 1] = eq_offset[n] + y.module(n + 1).num_generators() * x.module(n).num_generators();
  auto eq = [&](int n, int t, int s) {
    n = wrap(n, N);
    return eq_offset[n] + t * x.module(n).num_generators() + s;
  };
  struct Var {
    int n, t, s;
    PScalar scale;
  };
  std::vector<Var> vars;
  std::vector<linalg::SparseVec> cols;
  for (int n = 0; n < N; ++n) {
    const FpModule& xs = x.module(n);
    const FpModule& yt = y.module(n);
    for (int s = 0; s < xs.num_generators(); ++s) {
      for (int t = 0; t < yt.num_generators(); ++t) {
        const int es = xs.exponent(s), et = yt.exponent(t);
        if (et < 0 && es >= 0) continue;
        PScalar scale = (et >= 0 && es >= 0 && et > es) ? prime_power(p, et - es) : PScalar(1);
        std::map<int, PScalar> col;
        const PMatrix& dy = y.d(n).matrix();
        for (Eigen::Index r = 0; r < dy.rows(); ++r)
          if (!dy(r, t).is_zero()) col[eq(n, static_cast<int>(r), s)] += scale * dy(r, t);
        const PMatrix& dx = x.d(n - 1).matrix();
        for (Eigen::Index j = 0; j < dx.cols(); ++j)
          if (!dx(s, j).is_zero()) col[eq(n - 1, t, static_cast<int>(j))] -= scale * dx(s, j);
        linalg::SparseVec v;
        for (auto& [k, c] : col)
          if (!c.is_zero()) v.emplace_back(k, c);
        vars.push_back({n, t, s, scale});
        cols.push_back(std::move(v));
      }
    }
  }
  const int nvars = static_cast<int>(vars.size());
  for (int n = 0; n < N; ++n) {
    const FpModule& next = y.module(n + 1);
    for (int s = 0; s < x.module(n).num_generators(); ++s)
      for (int t = 0; t < static_cast<int>(next.torsion().size()); ++t)
        cols.push_back({{eq(n, t, s), -prime_power(p, next.torsion()[t])}});
  }
  std::vector<ChainMap> out;
  for (const auto& k : kernel_top(cols, eq_offset[N], nvars, p)) {
    std::vector<PMatrix> mats;
    for (int n = 0; n < N; ++n) mats.push_back(zero_matrix(y.module(n).num_generators(), x.module(n).num_generators()));
    for (const auto& [i, c] : k) mats[vars[i].n](vars[i].t, vars[i].s) = c * vars[i].scale;
    std::vector<ModuleMap> comps;
    for (int n = 0; n < N; ++n) comps.push_back(ModuleMap(x.module(n), y.module(n), std::move(mats[n])));
    ChainMap f(x, y, std::move(comps));
    if (!f.is_zero()) out.push_back(std::move(f));
  }
  return out;
}

CyclicComplex moore_complex(int p) {
  const int N = CyclicComplex::period_for(p);
  FpModule z = FpModule::free(p, 1);
  std::vector<FpModule> mods(static_cast<std::size_t>(N), FpModule::zero(p));
  mods[0] = z;
  mods[1] = z;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) ds.push_back(ModuleMap::zero(mods[n], mods[wrap(n + 1, N)]));
  ds[0] = ModuleMap::scalar(z, p);
  return CyclicComplex(p, std::move(mods), std::move(ds));
}

CyclicComplex contractible_complex(const FpModule& m, int degree, int N) {
  std::vector<FpModule> mods(static_cast<std::size_t>(N), FpModule::zero(m.p()));
  mods[wrap(degree, N)] = m;
  mods[wrap(degree + 1, N)] = m;
  std::vector<ModuleMap> ds;
  for (int n = 0; n < N; ++n) ds.push_back(ModuleMap::zero(mods[n], mods[wrap(n + 1, N)]));
  ds[wrap(degree, N)] = ModuleMap::identity(m);
  return CyclicComplex(m.p(), std::move(mods), std::move(ds));
}

}  // namespace kanlim
