#include <gtest/gtest.h>

#include "kanlim/franke/franke.hpp"
#include "kanlim/palgebra/errors.hpp"
#include "test_complex_support.hpp"
#include "test_support.hpp"

namespace kanlim {
namespace {

const FpModule Z = FpModule::free(3, 1);
const FpModule Z3 = FpModule::cyclic(3, 1);
const FpModule O = FpModule::zero(3);

std::string failures(const PipelineReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    out += c.name + ":";
    for (const auto& [k, v] : c.witness) out += " [" + k + "=" + v + "]";
    out += "\n";
  }
  return out;
}

// Failed checks other than L-membership.
std::string failures_besides_l(const PipelineReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.passed || c.anchor == "L-membership of i*E") continue;
    out += c.name + "\n";
  }
  return out;
}

bool l_passed(const PipelineReport& r) {
  for (const auto& c : r.checks)
    if (c.anchor == "L-membership of i*E") return c.passed;
  return false;
}

// Whether some Tor(H^s, H~^t) is nonzero.
bool has_tor(const PipelineReport& r) {
  for (const auto& b : r.bz)
    if (!b.expected_vertical_kernel.is_zero()) return true;
  return false;
}

TEST(CrownDecompose, Moore) {
  CyclicComplex m = moore_example();
  LObject a = crown_decompose(m);
  EXPECT_EQ(a.b(1), Z);
  EXPECT_TRUE(a.b(0).is_zero());
  EXPECT_TRUE(a.b(2).is_zero());
  EXPECT_TRUE(a.b(3).is_zero());
  const CyclicComplex& z0 = a.diagram().at(a.zeta(0));
  EXPECT_EQ(z0.module(0), Z);
  EXPECT_EQ(z0.module(1), Z);
  EXPECT_TRUE(z0.d(0).is_iso());
  const CyclicComplex& z1 = a.diagram().at(a.zeta(1));
  EXPECT_EQ(z1.module(1), Z);
  EXPECT_TRUE(z1.module(2).is_zero());
  EXPECT_TRUE(is_reedy_cofibrant(a.diagram()));
}

TEST(CrownDecompose, ZeroAndTrivialDifferential) {
  EXPECT_TRUE(crown_decompose(CyclicComplex::zero(3, 4)).diagram().is_zero());
  CyclicComplex c(3, {Z, Z3, O, Z}, {ModuleMap::zero(Z, Z3), ModuleMap::zero(Z3, O), ModuleMap::zero(O, Z),
                                     ModuleMap::zero(Z, Z)});
  LObject a = crown_decompose(c);
  for (int n = 0; n < 4; ++n) {
    EXPECT_TRUE(a.diagram().at(a.beta(n)).is_zero());
    EXPECT_EQ(a.diagram().at(a.zeta(n)), CyclicComplex::concentrated(c.module(n), n, 4));
  }
}

TEST(LObject, RejectsNonMembers) {
  // zeta_0 with cohomology in degree 1
  FinPoset crown = posets::crown(4);
  CxDiagram bad = CxDiagram::zero(crown, CyclicComplex::zero(3, 4));
  std::vector<CyclicComplex> v = bad.vertices();
  v[crown.index("zeta_0")] = CyclicComplex::concentrated(Z, 1, 4);
  std::vector<ChainMap> e;
  for (auto [a, b] : crown.hasse()) e.push_back(ChainMap::zero(v[a], v[b]));
  CxDiagram x = cx_diagram(crown, 3, 4, v, e);
  EXPECT_FALSE(LObject::check(x).passed);
  EXPECT_THROW(LObject{x}, NotInL);

  // beta_0 -> zeta_0 not injective on H^0
  v = bad.vertices();
  v[crown.index("beta_0")] = CyclicComplex::concentrated(Z, 0, 4);
  e.clear();
  for (auto [a, b] : crown.hasse()) e.push_back(ChainMap::zero(v[a], v[b]));
  EXPECT_THROW(LObject(cx_diagram(crown, 3, 4, v, e)), NotInL);
}

TEST(Reconstruction, Moore) {
  CyclicComplex m = moore_example();
  RoundTrip rt = round_trip(m);
  EXPECT_TRUE(rt.exact());
  EXPECT_EQ(rt.q.complex.modules(), m.modules());
  EXPECT_EQ(crown_assemble(rt.crown), m);
  EXPECT_EQ(crown_assemble(crown_decompose(CyclicComplex::zero(3, 4))), CyclicComplex::zero(3, 4));
}

TEST(Reconstruction, ZeroBetaGivesCohomology) {
  // crown with all beta vertices zero: Q is the zeta cohomology with d = 0
  FinPoset crown = posets::crown(4);
  std::vector<CyclicComplex> v(crown.size(), CyclicComplex::zero(3, 4));
  for (int n = 0; n < 4; ++n) v[crown.index(posets::zeta(n, 4))] = CyclicComplex::concentrated(n % 2 ? Z3 : Z, n, 4);
  std::vector<ChainMap> e;
  for (auto [a, b] : crown.hasse()) e.push_back(ChainMap::zero(v[a], v[b]));
  CyclicComplex q = Q(LObject(cx_diagram(crown, 3, 4, v, e)));
  EXPECT_EQ(q.modules(), (std::vector<FpModule>{Z, Z3, Z, Z3}));
  for (int n = 0; n < 4; ++n) EXPECT_TRUE(q.d(n).is_zero());
}

TEST(Reconstruction, TwoTermObject) {
  // C^s in slot s and its image in slot s+1
  CyclicComplex t = contractible_complex(FpModule(3, 2), 1, 4);
  RoundTrip rt = round_trip(t);
  EXPECT_TRUE(rt.exact());
  EXPECT_EQ(rt.q.complex.module(1), FpModule(3, 2));
  EXPECT_EQ(rt.q.complex.module(2), FpModule(3, 2));
  EXPECT_TRUE(rt.q.complex.d(1).is_iso());
}

TEST(ReconstructionProperty, RoundTripIsExact) {
  for (int k = 0; k < testing::property_cases(); ++k) {
    auto rng = testing::rng_for("franke-roundtrip", k);
    CyclicComplex c = testing::random_complex(rng, 3, 4);
    RoundTrip rt = round_trip(c);
    EXPECT_TRUE(rt.comparison_iso) << k;
    EXPECT_TRUE(rt.q_exact) << k;
    EXPECT_TRUE(rt.colimit_exact) << k;
    EXPECT_TRUE(rt.hocolim_quasi_iso) << k;
    EXPECT_EQ(rt.q.complex.modules(), c.modules()) << k;
  }
}

TEST(MooreExample, Basics) {
  CyclicComplex m = moore_example();
  EXPECT_EQ(cohomology_all(m), (std::vector<FpModule>{O, Z3, O, O}));
  EXPECT_TRUE(m.is_flat());
  EXPECT_THROW(moore_example(5), Unsupported);
}

TEST(SmashPipeline, MooreMoore) {
  CyclicComplex m = moore_example();
  PipelineReport r = smash_pipeline(m, m);
  // Tor(Z/3, Z/3) sits in the kernel of H^2(gamma_2) -> H^2(zeta_2), so i*E
  // is not in L; every other check holds.
  EXPECT_EQ(failures_besides_l(r), "");
  EXPECT_FALSE(l_passed(r));
  EXPECT_FALSE(r.bz[2].vertical_mono);
  EXPECT_EQ(r.bz[2].vertical_kernel, Z3);
  EXPECT_EQ(r.bz[2].expected_vertical_kernel, Z3);
  for (int n : {0, 1, 3}) EXPECT_TRUE(r.bz[n].vertical_mono) << n;
  EXPECT_EQ(cohomology_all(r.q.complex), (std::vector<FpModule>{O, Z3, Z3, O}));
  EXPECT_FALSE(r.replaced);
  // n = 1: no Z (x) Z~ terms, B^1 (x) B~^1 on the right
  EXPECT_TRUE(r.bz[1].zeta.left.is_zero());
  EXPECT_EQ(r.bz[1].zeta.middle, Z);
}

TEST(SmashPipeline, UnitAndZero) {
  CyclicComplex m = moore_example();
  PipelineReport r = smash_pipeline(m, CyclicComplex::unit(3, 4));
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(cohomology_all(r.q.complex), cohomology_all(m));

  CyclicComplex zero = CyclicComplex::zero(3, 4);
  PipelineReport z = smash_pipeline(zero, zero);
  EXPECT_TRUE(z.passed()) << failures(z);
  EXPECT_TRUE(z.q.complex.is_zero());
  EXPECT_TRUE(z.context.e.is_zero());
}

TEST(SmashPipeline, NonFlatInputs) {
  CyclicComplex t = CyclicComplex::concentrated(Z3, 0, 4);
  EXPECT_THROW(smash_pipeline(t, t, PipelineOptions{false, false, false}), FlatnessViolation);
  PipelineReport r = smash_pipeline(t, t, PipelineOptions{true, false, false});
  EXPECT_TRUE(r.replaced);
  EXPECT_FALSE(r.notes.empty());
  EXPECT_EQ(failures_besides_l(r), "");
  EXPECT_EQ(l_passed(r), !has_tor(r));
  EXPECT_EQ(cohomology_all(r.q.complex), cohomology_all(derived_tensor(t, t)));
}

TEST(SmashPipeline, DifferentialFreeInputs) {
  CyclicComplex c = CyclicComplex::concentrated(FpModule(3, 2), 1, 4);
  PipelineReport r = smash_pipeline(c, c, PipelineOptions{true, false, false});
  EXPECT_TRUE(r.passed()) << failures(r);
  for (const auto& b : r.bz) {
    EXPECT_TRUE(b.zeta.right.is_zero());
    EXPECT_EQ(b.zeta.middle, b.zeta.expected_left);
  }
}

TEST(SmashPipelineProperty, FlatInputs) {
  const int cases = std::max(4, testing::property_cases() / 6);
  for (int k = 0; k < cases; ++k) {
    auto rng = testing::rng_for("franke-smash", k);
    CyclicComplex c = gen::complex(rng, 3, 4, gen::Bounds{2, 2, true});
    CyclicComplex ct = gen::complex(rng, 3, 4, gen::Bounds{2, 2, true});
    PipelineReport r = smash_pipeline(c, ct, PipelineOptions{true, k < 2, k < 2});
    EXPECT_EQ(failures_besides_l(r), "") << k;
    EXPECT_EQ(l_passed(r), !has_tor(r)) << k << "\n" << failures(r);
    for (const auto& b : r.bz) EXPECT_EQ(b.vertical_kernel, b.expected_vertical_kernel) << k;
  }
}

TEST(Equatorial, LegsGiveAntidiagonal) {
  // Both legs identified with the suspension in the same way: the arm swap
  // acts by -1, so the two components differ by a sign.
  EquatorialReport u = equatorial_report(CyclicComplex::unit(3, 4));
  EXPECT_TRUE(u.legs_iso);
  EXPECT_TRUE(u.cone_matches);
  EXPECT_TRUE(u.antidiagonal) << u.first[3].matrix() << " / " << u.second[3].matrix();
  EXPECT_FALSE(u.diagonal);
  EXPECT_FALSE(equatorial_check(CyclicComplex::unit(3, 4)));

  EquatorialReport m = equatorial_report(moore_example());
  EXPECT_TRUE(m.legs_iso && m.cone_matches && m.antidiagonal);
  EXPECT_FALSE(m.diagonal);

  // nothing to distinguish on the zero complex
  EXPECT_TRUE(equatorial_check(CyclicComplex::zero(3, 4)));
}

TEST(EquatorialProperty, AlwaysAntidiagonal) {
  for (int k = 0; k < std::max(4, testing::property_cases() / 6); ++k) {
    auto rng = testing::rng_for("franke-equator", k);
    CyclicComplex x = testing::random_complex(rng, 3, 4);
    EquatorialReport r = equatorial_report(x);
    EXPECT_TRUE(r.legs_iso && r.cone_matches && r.antidiagonal) << k;
    EXPECT_EQ(r.diagonal, cohomology_all(x) == std::vector<FpModule>(4, O)) << k;
  }
}

TEST(SpecialCase, Moore) {
  CyclicComplex m = moore_example();
  SpecialCaseReport r = special_case_differential(m, 0, m, 0);
  EXPECT_TRUE(r.special_ok);
  EXPECT_TRUE(r.general_ok);
  EXPECT_EQ(r.koszul, 1);
  // (3, 3) into the two degree-1 summands
  EXPECT_EQ(r.general_differential.matrix().rows(), 2);
  EXPECT_EQ(r.general_differential.matrix()(0, 0), PScalar(3));
  EXPECT_EQ(r.general_differential.matrix()(1, 0), PScalar(3));
}

TEST(SpecialCase, TrivialCases) {
  CyclicComplex c = CyclicComplex::concentrated(FpModule(3, 2), 1, 4);
  SpecialCaseReport r = special_case_differential(c, 1, c, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.general_differential.is_zero());
  EXPECT_EQ(r.koszul, -1);

  CyclicComplex m = moore_example();
  SpecialCaseReport u = special_case_differential(m, 0, CyclicComplex::unit(3, 4), 0);
  EXPECT_TRUE(u.passed());
  EXPECT_EQ(u.general_differential.matrix()(0, 0), PScalar(3));
}

}  // namespace
}  // namespace kanlim
