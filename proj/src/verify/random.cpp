#include "kanlim/verify/random.hpp"

#include <algorithm>
#include <cstdlib>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim::gen {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("KANLIM_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
  }
  return fallback;
}

Rng stream(std::uint64_t seed, const std::string& suite, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(suite)), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

PScalar entry(Rng& rng, int p) {
  const int v = uniform(rng, -3, 3);
  switch (uniform(rng, 0, 5)) {
    case 0:
      return PScalar(0);
    case 1:
    case 2:
      return PScalar(static_cast<long long>(v) * p);
    case 3:
      return PScalar(static_cast<long long>(v) * p * p);
    default:
      return PScalar(v);
  }
}

FpModule module(Rng& rng, int p, const Bounds& b) {
  const int gens = uniform(rng, 0, b.max_rank);
  int free_rank = 0;
  std::vector<int> torsion;
  for (int i = 0; i < gens; ++i) {
    if (b.flat || uniform(rng, 0, 1) == 0)
      ++free_rank;
    else
      torsion.push_back(uniform(rng, 1, b.max_exp));
  }
  return FpModule(p, free_rank, std::move(torsion));
}

ModuleMap map(Rng& rng, const FpModule& src, const FpModule& tgt) {
  const int p = src.p();
  PMatrix m = zero_matrix(tgt.num_generators(), src.num_generators());
  for (int s = 0; s < src.num_generators(); ++s) {
    const int es = src.exponent(s);
    for (int t = 0; t < tgt.num_generators(); ++t) {
      const int et = tgt.exponent(t);
      if (et < 0 && es >= 0) continue;
      PScalar x = entry(rng, p);
      if (es >= 0 && et > es) x *= prime_power(p, et - es);
      m(t, s) = x;
    }
  }
  return ModuleMap(src, tgt, std::move(m));
}

Automorphism automorphism(Rng& rng, const FpModule& m) {
  const int n = m.num_generators();
  const int p = m.p();
  PMatrix fwd = identity_matrix(n), bwd = identity_matrix(n);
  if (n == 0) return {ModuleMap(m, m, fwd), ModuleMap(m, m, bwd)};
  const int steps = uniform(rng, 1, 2 * n);
  for (int k = 0; k < steps; ++k) {
    const int i = uniform(rng, 0, n - 1);
    const int j = uniform(rng, 0, n - 1);
    PMatrix e = identity_matrix(n), einv = identity_matrix(n);
    if (i == j) {
      const PScalar u(uniform(rng, 0, 1) ? -1 : 2);
      e(i, i) = u;
      einv(i, i) = PScalar(1) / u;
    } else {
      // Transvection x_j -> x_j + c x_i, legal when the orders allow it.
      const int ei = m.exponent(i), ej = m.exponent(j);
      if (ei < 0 && ej >= 0) continue;
      PScalar c(uniform(rng, -2, 2));
      if (ej >= 0 && ei > ej) c *= prime_power(p, ei - ej);
      e(i, j) = c;
      einv(i, j) = -c;
    }
    fwd = multiply(e, fwd);
    bwd = multiply(bwd, einv);
  }
  return {ModuleMap(m, m, fwd), ModuleMap(m, m, bwd)};
}

CyclicComplex complex(Rng& rng, int p, int N, const Bounds& b) {
  std::vector<CyclicComplex> pieces;
  std::vector<int> room(static_cast<std::size_t>(N), b.max_rank);  // generators left per degree
  const int count = uniform(rng, 1, 3);
  for (int k = 0; k < count; ++k) {
    const int degree = uniform(rng, 0, N - 1);
    const int next = wrap(degree + 1, N);
    Bounds piece = b;
    if (uniform(rng, 0, 2) == 0) {
      piece.max_rank = room[degree];
      FpModule m = module(rng, p, piece);
      room[degree] -= m.num_generators();
      pieces.push_back(CyclicComplex::concentrated(m, degree, N));
      continue;
    }
    piece.max_rank = room[degree];
    FpModule a = module(rng, p, piece);
    room[degree] -= a.num_generators();
    piece.max_rank = room[next];
    FpModule c = module(rng, p, piece);
    room[next] -= c.num_generators();
    std::vector<FpModule> mods(static_cast<std::size_t>(N), FpModule::zero(p));
    mods[degree] = a;
    mods[next] = c;
    std::vector<ModuleMap> ds;
    for (int n = 0; n < N; ++n) ds.push_back(ModuleMap::zero(mods[n], mods[wrap(n + 1, N)]));
    ds[degree] = map(rng, a, c);
    pieces.push_back(CyclicComplex(p, std::move(mods), std::move(ds)));
  }
  CyclicComplex sum = complex_sum(pieces, p, N).complex;
  return scramble(rng, sum).target();
}

ChainMap scramble(Rng& rng, const CyclicComplex& c) {
  const int N = c.N();
  std::vector<Automorphism> autos;
  for (int n = 0; n < N; ++n) autos.push_back(automorphism(rng, c.module(n)));
  std::vector<ModuleMap> ds, comps;
  for (int n = 0; n < N; ++n) {
    ds.push_back(autos[wrap(n + 1, N)].forward * c.d(n) * autos[n].backward);
    comps.push_back(autos[n].forward);
  }
  CyclicComplex out(c.p(), c.modules(), std::move(ds));
  return ChainMap(c, out, std::move(comps));
}

ChainMap chain_map(Rng& rng, const CyclicComplex& x, const CyclicComplex& y) {
  ChainMap f = ChainMap::zero(x, y);
  for (const auto& g : chain_map_generators(x, y)) {
    const int c = uniform(rng, -2, 2);
    if (c == 0) continue;
    std::vector<ModuleMap> comps;
    for (int n = 0; n < x.N(); ++n) comps.push_back(g.at(n).scaled(PScalar(c)));
    f = f + ChainMap(x, y, std::move(comps));
  }
  return f;
}

CyclicComplex padded(Rng& rng, const CyclicComplex& flat) {
  if (!flat.is_flat()) throw FlatnessViolation("padding expects a flat complex");
  const int N = flat.N();
  std::vector<CyclicComplex> parts{flat};
  const int extra = uniform(rng, 1, 2);
  for (int k = 0; k < extra; ++k)
    parts.push_back(contractible_complex(FpModule::free(flat.p(), uniform(rng, 1, 2)), uniform(rng, 0, N - 1), N));
  return scramble(rng, complex_sum(parts, flat.p(), N).complex).target();
}

}  // namespace kanlim::gen

namespace kanlim::gen {

FinPoset poset(Rng& rng, int max_size) {
  const int n = uniform(rng, 1, max_size);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform(rng, 0, 3) == 0) rel.emplace_back(i, j);
  return FinPoset(std::move(names), rel);
}

PosetMap monotone_map(Rng& rng, const FinPoset& source, const FinPoset& target) {
  std::vector<int> images(static_cast<std::size_t>(source.size()), -1);
  for (int c : source.linear_extension()) {
    std::vector<int> candidates;
    for (int t = 0; t < target.size(); ++t) {
      bool ok = true;
      for (int a : source.lower_covers(c))
        if (!target.leq(images[a], t)) ok = false;
      if (ok) candidates.push_back(t);
    }
    if (candidates.empty()) return PosetMap::constant(source, target, uniform(rng, 0, target.size() - 1));
    images[c] = candidates[uniform(rng, 0, static_cast<int>(candidates.size()) - 1)];
  }
  return PosetMap(source, target, std::move(images));
}

namespace {

// Builds vertices in linear-extension order. `latch(below_subposet, vertices,
// edges)` returns the colimit object of what is below together with the
// cocone maps; `extend(L)` returns the new vertex and the map L -> vertex.
template <class Obj, class Mor, class Latch, class Extend>
Diagram<Obj, Mor> grow(const FinPoset& shape, const Obj& zero, Latch latch, Extend extend) {
  const int n = shape.size();
  std::vector<Obj> vertices(static_cast<std::size_t>(n));
  std::vector<Mor> edges(shape.hasse().size());
  std::vector<int> edge_of(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t k = 0; k < shape.hasse().size(); ++k)
    edge_of[shape.hasse()[k].first * n + shape.hasse()[k].second] = static_cast<int>(k);
  for (int c : shape.linear_extension()) {
    std::vector<int> below;
    for (int a = 0; a < n; ++a)
      if (shape.less(a, c)) below.push_back(a);
    SubPoset sub = subposet(shape, below);
    std::vector<Obj> sv;
    std::vector<Mor> se;
    for (int a : below) sv.push_back(vertices[a]);
    for (auto [i, j] : sub.poset.hasse()) se.push_back(edges[edge_of[below[i] * n + below[j]]]);
    Diagram<Obj, Mor> part(sub.poset, zero, std::move(sv), std::move(se), Validate::no);
    auto [latching, cocone] = latch(part);
    auto [vertex, phi] = extend(latching);
    vertices[c] = vertex;
    for (int a : shape.lower_covers(c)) {
      const int pos = static_cast<int>(std::find(below.begin(), below.end(), a) - below.begin());
      edges[edge_of[a * n + c]] = phi * cocone[pos];
    }
  }
  return Diagram<Obj, Mor>(shape, zero, std::move(vertices), std::move(edges), Validate::no);
}

}  // namespace

ModDiagram mod_diagram(Rng& rng, const FinPoset& shape, int p, const Bounds& b, bool reedy) {
  auto latch = [](const ModDiagram& part) {
    ModColimit col = strict_colim(part);
    std::vector<ModuleMap> cocone;
    for (int k = 0; k < part.shape().size(); ++k) cocone.push_back(col.cocone(k));
    return std::make_pair(col.module, cocone);
  };
  auto extend = [&](const FpModule& l) {
    if (reedy) {
      DirectSum s = direct_sum({l, module(rng, p, b)}, p);
      Automorphism a = automorphism(rng, s.module);
      return std::make_pair(s.module, a.forward * s.injection(0));
    }
    FpModule x = module(rng, p, b);
    return std::make_pair(x, map(rng, l, x));
  };
  return grow<FpModule, ModuleMap>(shape, FpModule::zero(p), latch, extend);
}

CxDiagram cx_diagram(Rng& rng, const FinPoset& shape, int p, int N, const Bounds& b, bool reedy) {
  auto latch = [](const CxDiagram& part) {
    CxColimit col = strict_colim(part);
    return std::make_pair(col.complex, col.cocone);
  };
  auto extend = [&](const CyclicComplex& l) {
    if (reedy) {
      CyclicComplex m = complex(rng, p, N, b);
      ComplexSum s = complex_sum({l, m}, p, N);
      ChainMap a = scramble(rng, s.complex);
      return std::make_pair(a.target(), a * s.injection(0, {l, m}));
    }
    CyclicComplex x = complex(rng, p, N, b);
    return std::make_pair(x, chain_map(rng, l, x));
  };
  return grow<CyclicComplex, ChainMap>(shape, CyclicComplex::zero(p, N), latch, extend);
}

}  // namespace kanlim::gen
