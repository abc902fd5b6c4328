#include <gtest/gtest.h>

#include "kanlim/derived/derived.hpp"
#include "kanlim/palgebra/errors.hpp"
#include "kanlim/verify/random.hpp"
#include "test_support.hpp"

namespace kanlim {
namespace {

const FpModule Z = FpModule::free(3, 1);
const FpModule Z3 = FpModule::cyclic(3, 1);
const FpModule O = FpModule::zero(3);

ModDiagram vee_diagram(const FpModule& left, const FpModule& mid, const FpModule& right, const ModuleMap& to_left,
                       const ModuleMap& to_right) {
  FinPoset v = posets::vee();
  std::vector<FpModule> verts(3);
  verts[v.index("(1,0)")] = left;
  verts[v.index("(0,0)")] = mid;
  verts[v.index("(0,1)")] = right;
  std::vector<ModuleMap> edges;
  for (auto [a, b] : v.hasse()) edges.push_back(v.name(b) == "(1,0)" ? to_left : to_right);
  return mod_diagram(v, 3, verts, edges);
}

/// H^t of each vertex, as a module diagram.
ModDiagram cohomology_diagram(const CxDiagram& x, int t) {
  std::vector<FpModule> v;
  for (const auto& c : x.vertices()) v.push_back(cohomology(c, t));
  std::vector<ModuleMap> e;
  for (const auto& m : x.edges()) e.push_back(induced_on_cohomology(m, t));
  return mod_diagram(x.shape(), x.zero_object().p(), v, e);
}

TEST(PTilde, OverInterval) {
  ModDiagram x = mod_diagram(posets::interval(), 3, {Z, Z3}, {ModuleMap(Z, Z3, PMatrix::Constant(1, 1, PScalar(1)))});
  PTilde p = ptilde(x);
  EXPECT_EQ(p.diagram.at(0), Z);
  EXPECT_EQ(p.diagram.at(1), FpModule(3, 1, {1}));
  EXPECT_TRUE(p.counit.at(1).is_epi());
  RTilde r = rtilde(x, p);
  EXPECT_TRUE(r.diagram.at(0).is_zero());
  EXPECT_EQ(r.diagram.at(1), Z);
}

TEST(PTilde, OverPointAndVee) {
  ModDiagram pt = mod_diagram(point(), 3, {Z3}, {});
  PTilde p = ptilde(pt);
  EXPECT_EQ(p.diagram.at(0), Z3);
  EXPECT_EQ(p.counit.at(0), ModuleMap::identity(Z3));
  EXPECT_TRUE(rtilde(pt).diagram.at(0).is_zero());

  ModDiagram v = vee_diagram(O, Z, O, ModuleMap::zero(Z, O), ModuleMap::zero(Z, O));
  PTilde pv = ptilde(v);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(pv.diagram.at(c), Z);
}

TEST(ResolutionProperty, ExactAndFinite) {
  for (int k = 0; k < testing::property_cases() / 2; ++k) {
    auto rng = testing::rng_for("resolution-exact", k);
    FinPoset s = gen::poset(rng, 5);
    ModDiagram x = gen::mod_diagram(rng, s, 3, gen::Bounds{2, 2, false}, false);
    Resolution res = resolve(x);
    ASSERT_EQ(static_cast<int>(res.stages.size()), s.height() + 1);
    ASSERT_TRUE(res.kernels.back().is_zero());
    for (int c = 0; c < s.size(); ++c) {
      ASSERT_TRUE(res.augmentation.at(c).is_epi());
      const int h = static_cast<int>(res.stages.size());
      for (int j = 0; j < h; ++j) {
        const FpModule& here = res.stages[j].at(c);
        ModuleMap in = j + 1 < h ? res.boundary[j].at(c) : ModuleMap::zero(O, here);
        ModuleMap out = j >= 1 ? res.boundary[j - 1].at(c) : res.augmentation.at(c);
        ASSERT_TRUE(homology_subquotient(in, out).module().is_zero()) << "case " << k << " stage " << j;
      }
    }
  }
}

TEST(DerivedColim, Vee) {
  ModDiagram v = vee_diagram(O, Z, O, ModuleMap::zero(Z, O), ModuleMap::zero(Z, O));
  EXPECT_TRUE(derived_colim(v, 0).is_zero());
  EXPECT_EQ(derived_colim(v, 1), Z);
  EXPECT_TRUE(derived_colim(v, 2).is_zero());
  EXPECT_THROW(derived_colim(v, -1), ShapeMismatch);
}

TEST(DerivedColimProperty, ReedyCofibrantIsAcyclic) {
  for (int k = 0; k < testing::property_cases(); ++k) {
    auto rng = testing::rng_for("reedy-acyclic", k);
    FinPoset s = gen::poset(rng, 5);
    ModDiagram x = gen::mod_diagram(rng, s, 3, gen::Bounds{2, 2, false}, true);
    ASSERT_TRUE(is_reedy_cofibrant(x));
    ASSERT_EQ(derived_colim(x, 0), strict_colim(x).module) << "case " << k;
    for (int j = 1; j <= s.height(); ++j) ASSERT_TRUE(derived_colim(x, j).is_zero()) << "case " << k;
  }
}

TEST(DerivedLkanProperty, DegreeZeroIsStrict) {
  for (int k = 0; k < testing::property_cases() / 2; ++k) {
    auto rng = testing::rng_for("lkan-degree-zero", k);
    FinPoset a = gen::poset(rng, 5), b = gen::poset(rng, 4);
    PosetMap f = gen::monotone_map(rng, a, b);
    ModDiagram x = gen::mod_diagram(rng, a, 3, gen::Bounds{2, 2, false}, false);
    ASSERT_EQ(derived_lkan(f, x, 0), strict_lkan(f, x)) << "case " << k;
  }
}

TEST(Hocolim, MooreSuspends) {
  CyclicComplex m = moore_complex(3);
  CyclicComplex zero = CyclicComplex::zero(3, 4);
  FinPoset v = posets::vee();
  std::vector<CyclicComplex> verts(3, zero);
  verts[v.index("(0,0)")] = m;
  std::vector<ChainMap> e;
  for (int k = 0; k < 2; ++k) e.push_back(ChainMap::zero(m, zero));
  CyclicComplex h = hocolim_cx(cx_diagram(v, 3, 4, verts, e));
  EXPECT_EQ(cohomology_all(h), (std::vector<FpModule>{Z3, O, O, O}));
  EXPECT_EQ(cohomology_all(h), cohomology_all(shift(m, 1)));
}

TEST(Hocolim, OverPointIsIdentity) {
  auto rng = testing::rng_for("hocolim-point", 0);
  for (int k = 0; k < 10; ++k) {
    CyclicComplex c = gen::complex(rng, 3, 4, gen::Bounds{2, 2, false});
    CxDiagram x = cx_diagram(point(), 3, 4, {c}, {});
    EXPECT_EQ(cohomology_all(hocolim_cx(x)), cohomology_all(c));
  }
}

TEST(ConeProperty, MatchesMappingCone) {
  for (int k = 0; k < testing::property_cases() / 2; ++k) {
    auto rng = testing::rng_for("cone-compat", k);
    CyclicComplex a = gen::complex(rng, 3, 4, gen::Bounds{2, 2, false});
    CyclicComplex b = gen::complex(rng, 3, 4, gen::Bounds{2, 2, false});
    ChainMap f = gen::chain_map(rng, a, b);
    Cone c = mapping_cone(f);
    ASSERT_EQ(cohomology_all(diagram_cone(f)), cohomology_all(c.cone)) << "case " << k;
    ChainMap i = cone_map(f);
    for (int n = 0; n < 4; ++n)
      ASSERT_EQ(invariants(induced_on_cohomology(i, n)), invariants(induced_on_cohomology(c.inclusion, n)))
          << "case " << k << " degree " << n;
  }
}

TEST(DerivedBox, Examples) {
  auto rng = testing::rng_for("box", 0);
  CyclicComplex a = gen::complex(rng, 3, 4, gen::Bounds{2, 2, true});
  CyclicComplex b = gen::complex(rng, 3, 4, gen::Bounds{2, 2, true});
  CyclicComplex zero = CyclicComplex::zero(3, 4);
  ChainMap za = ChainMap::zero(zero, a), zb = ChainMap::zero(zero, b);
  // (0 -> A) box (0 -> B) is 0 -> A (x) B.
  ChainMap box = derived_box(za, zb);
  EXPECT_TRUE(is_acyclic(box.source()));
  EXPECT_EQ(cohomology_all(box.target()), cohomology_all(tensor_cyclic(a, b).complex));
  // id box (0 -> B) is an equivalence.
  EXPECT_TRUE(is_quasi_iso(derived_box(ChainMap::identity(a), zb)));
}

TEST(SpectralSequenceProperty, PagesAgree) {
  for (int k = 0; k < testing::property_cases() / 4; ++k) {
    auto rng = testing::rng_for("sseq", k);
    FinPoset a = gen::poset(rng, 4), b = gen::poset(rng, 3);
    PosetMap f = gen::monotone_map(rng, a, b);
    CxDiagram x = gen::cx_diagram(rng, a, 3, 4, gen::Bounds{1, 2, false}, false);
    KanDoubleComplex dc = kan_double_complex(f, x);
    std::vector<std::vector<ModDiagram>> lk(4);
    for (int t = 0; t < 4; ++t)
      for (int s = 0; s < dc.columns; ++s) lk[t].push_back(derived_lkan(f, cohomology_diagram(x, t), s));
    for (int v = 0; v < b.size(); ++v) {
      SpectralSequence ss = spectral_sequence(dc, v);
      ASSERT_EQ(ss.page(ss.columns).cells, ss.e_infinity.cells) << "case " << k;
      ASSERT_EQ(ss.page(2).cells, ss.e2_from_d1.cells) << "case " << k;
      for (int j = 0; j < dc.columns; ++j)
        for (int t = 0; t < 4; ++t) {
          ASSERT_EQ(ss.page(1).at(-j, t), cohomology(dc.column(j, v), t));
          ASSERT_EQ(ss.page(2).at(-j, t), lk[t][j].at(v)) << "case " << k;
        }
    }
  }
}

TEST(SpectralSequenceProperty, SquareToPoint) {
  FinPoset sq = product(posets::interval(), posets::interval());
  FinPoset d4 = posets::d_poset(4);
  int moved = 0;
  for (int k = 0; k < testing::property_cases() / 4; ++k) {
    auto rng = testing::rng_for("sseq-square", k);
    const FinPoset& shape = k % 2 ? sq : d4;
    CxDiagram x = gen::cx_diagram(rng, shape, 3, 4, gen::Bounds{1, 2, false}, false);
    SpectralSequence ss = sseq_pages(to_point(shape), x).front();
    ASSERT_EQ(ss.columns, 3);
    ASSERT_EQ(ss.page(3).cells, ss.e_infinity.cells) << "case " << k;
    ASSERT_EQ(ss.page(4).cells, ss.e_infinity.cells) << "case " << k;
    ASSERT_EQ(ss.page(2).cells, ss.e2_from_d1.cells) << "case " << k;
    if (ss.page(1).cells != ss.page(2).cells) ++moved;
  }
  EXPECT_GT(moved, 0);
}

TEST(SpectralSequence, CollapsesForReedyCofibrant) {
  for (int k = 0; k < 10; ++k) {
    auto rng = testing::rng_for("sseq-collapse", k);
    FinPoset a = gen::poset(rng, 4);
    CxDiagram x = gen::cx_diagram(rng, a, 3, 4, gen::Bounds{1, 2, false}, true);
    SpectralSequence ss = sseq_pages(to_point(a), x).front();
    for (const auto& [st, m] : ss.page(2).cells)
      if (st.first != 0) ASSERT_TRUE(m.is_zero()) << "case " << k;
    EXPECT_EQ(ss.page(2).cells, ss.e_infinity.cells);
  }
}

TEST(EdgeCheckProperty, Passes) {
  for (int k = 0; k < testing::property_cases() / 4; ++k) {
    auto rng = testing::rng_for("edge-check", k);
    FinPoset a = gen::poset(rng, 4), b = gen::poset(rng, 3);
    PosetMap f = gen::monotone_map(rng, a, b);
    CxDiagram x = gen::cx_diagram(rng, a, 3, 4, gen::Bounds{1, 2, false}, false);
    CxDiagram h = holkan_cx(f, x);
    for (int d = 0; d < b.size(); ++d)
      for (int e = 0; e < b.size(); ++e) {
        if (!b.leq(d, e)) continue;
        CheckResult r = edge_check(f, x, h, d, e);
        ASSERT_TRUE(r.passed) << "case " << k << ": " << (r.notes.empty() ? "" : r.notes.front());
      }
  }
  EXPECT_THROW(edge_check(posets::i_map(4), CxDiagram::zero(posets::crown(4), CyclicComplex::zero(3, 4)), 0, 1),
               Error);
}

}  // namespace
}  // namespace kanlim
