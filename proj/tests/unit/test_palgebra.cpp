#include <gtest/gtest.h>

#include "kanlim/palgebra/errors.hpp"
#include "kanlim/palgebra/module.hpp"
#include "kanlim/palgebra/snf.hpp"
#include "test_support.hpp"

namespace kanlim {
namespace {

PMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  PMatrix m = zero_matrix(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long x : row) m(i, j++) = PScalar(x);
    ++i;
  }
  return m;
}

PMatrix presentation(const FpModule& m) {
  PMatrix r = zero_matrix(m.num_generators(), static_cast<Eigen::Index>(m.torsion().size()));
  for (std::size_t i = 0; i < m.torsion().size(); ++i)
    r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = prime_power(m.p(), m.torsion()[i]);
  return r;
}

PMatrix kron(const PMatrix& a, const PMatrix& b) {
  PMatrix out = zero_matrix(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

TEST(PScalar, ArithmeticIsExact) {
  PScalar a(1, 2), b(1, 3);
  EXPECT_EQ(a + b, PScalar(5, 6));
  EXPECT_EQ(a * b, PScalar(1, 6));
  EXPECT_EQ(a / b, PScalar(3, 2));
  EXPECT_EQ(PScalar(2, -4), PScalar(-1, 2));
  EXPECT_THROW(PScalar(1, 0), InvalidScalar);
}

TEST(PScalar, OverflowSpillsToBigRationals) {
  PScalar x(1LL << 62);
  PScalar y = x * x * x;
  EXPECT_EQ(y / x / x, x);
  EXPECT_EQ(y.valuation(2), 186);
  EXPECT_EQ((y - y), PScalar(0));
}

TEST(PScalar, ValuationAndLocality) {
  EXPECT_EQ(PScalar(18).valuation(3), 2);
  EXPECT_EQ(PScalar(2, 9).valuation(3), -2);
  EXPECT_TRUE(PScalar(1, 2).is_plocal(3));
  EXPECT_FALSE(PScalar(1, 3).is_plocal(3));
  EXPECT_EQ(PScalar(1, 2).mod_prime_power(3, 2), PScalar(5));
  EXPECT_EQ(PScalar(-1).mod_prime_power(3, 1), PScalar(2));
  EXPECT_THROW((void)PScalar(1, 3).mod_prime_power(3, 1), InvalidScalar);
}

TEST(PlocalSnf, UnitsNormalise) {
  SmithForm f = plocal_snf(mat({{2, 0}, {0, 3}}), 3);
  EXPECT_EQ(f.D, mat({{1, 0}, {0, 3}}));
  EXPECT_EQ(multiply(multiply(f.U(), f.D), f.V()), mat({{2, 0}, {0, 3}}));
}

TEST(PlocalSnf, UnitEntryPivotsFirst) {
  PMatrix m = mat({{3, 1}, {0, 3}});
  SmithForm f = plocal_snf(m, 3);
  EXPECT_EQ(f.D, mat({{1, 0}, {0, 9}}));
  EXPECT_EQ(multiply(multiply(f.U(), f.D), f.V()), m);
}

TEST(PlocalSnf, ZeroMatrix) {
  SmithForm f = plocal_snf(zero_matrix(2, 3), 3);
  EXPECT_TRUE(is_zero(f.D));
  EXPECT_EQ(f.rank, 0);
}

TEST(PlocalSnf, RejectsNonLocalEntries) {
  PMatrix m = zero_matrix(1, 1);
  m(0, 0) = PScalar(1, 3);
  EXPECT_THROW(plocal_snf(m, 3), InvalidScalar);
}

TEST(PlocalSnfProperty, FactorisationAndMinorOracle) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("snf", c);
    const int p = c % 2 ? 3 : 5;
    const int rows = 1 + static_cast<int>(rng() % 4);
    const int cols = 1 + static_cast<int>(rng() % 4);
    PMatrix m = testing::random_matrix(rng, rows, cols, p);
    SmithForm f = plocal_snf(m, p);
    ASSERT_EQ(multiply(multiply(f.U(), f.D), f.V()), m);
    ASSERT_EQ(multiply(multiply(f.P, m), f.Q), f.D);
    ASSERT_EQ(multiply(f.P, f.P_inv), identity_matrix(rows));
    ASSERT_EQ(multiply(f.Q, f.Q_inv), identity_matrix(cols));
    for (int k = 0; k < f.rank; ++k) ASSERT_EQ(f.D(k, k), prime_power(p, f.D(k, k).valuation(p)));
    FpModule via_snf(p, rows - f.rank, [&] {
      std::vector<int> t;
      for (int e : f.exponents(p))
        if (e > 0) t.push_back(e);
      return t;
    }());
    ASSERT_EQ(via_snf, testing::oracle_cokernel(m, p));
    ASSERT_EQ(canonical_form(rows, m, p), via_snf);
  }
}

TEST(PlocalSnfProperty, PermutedInputGivesSameDiagonal) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("snf-perm", c);
    PMatrix m = testing::random_matrix(rng, 3, 4, 3);
    Eigen::PermutationMatrix<Eigen::Dynamic> pr(3), pc(4);
    pr.setIdentity();
    pc.setIdentity();
    std::shuffle(pr.indices().data(), pr.indices().data() + 3, rng);
    std::shuffle(pc.indices().data(), pc.indices().data() + 4, rng);
    PMatrix permuted = pr * m * pc;
    ASSERT_EQ(plocal_snf(m, 3, false).D, plocal_snf(permuted, 3, false).D);
  }
}

TEST(CanonicalForm, Examples) {
  EXPECT_EQ(canonical_form(1, mat({{6}}), 3), FpModule::cyclic(3, 1));
  EXPECT_EQ(canonical_form(2, zero_matrix(2, 0), 3), FpModule::free(3, 2));
  EXPECT_EQ(canonical_form(1, mat({{1}}), 3), FpModule::zero(3));
}

TEST(CanonicalFormProperty, InvariantUnderBaseChange) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("canon", c);
    PMatrix m = testing::random_matrix(rng, 3, 3, 3);
    // Unimodular row and column operations.
    PMatrix u = identity_matrix(3), v = identity_matrix(3);
    u(0, 1) = testing::random_entry(rng, 3);
    u(2, 0) = testing::random_entry(rng, 3);
    u(1, 1) = PScalar(2);
    v(1, 2) = testing::random_entry(rng, 3);
    v(0, 0) = PScalar(-1);
    ASSERT_EQ(canonical_form(3, m, 3), canonical_form(3, multiply(multiply(u, m), v), 3));
  }
}

TEST(ModuleMap, RejectsIllDefinedEntries) {
  FpModule z3 = FpModule::cyclic(3, 1);
  FpModule z9 = FpModule::cyclic(3, 2);
  FpModule f = FpModule::free(3, 1);
  EXPECT_THROW(ModuleMap(z3, z9, mat({{1}})), MapNotWellDefined);
  EXPECT_NO_THROW(ModuleMap(z3, z9, mat({{3}})));
  EXPECT_THROW(ModuleMap(z3, f, mat({{1}})), MapNotWellDefined);
  EXPECT_THROW(ModuleMap(z3, f, mat({{1, 1}})), ShapeMismatch);
  EXPECT_THROW(ModuleMap(z3, FpModule::cyclic(5, 1), mat({{1}})), PrimeMismatch);
  EXPECT_EQ(ModuleMap(z9, z9, mat({{10}})), ModuleMap::identity(z9));
}

TEST(Subquotients, MultiplicationByThreeIntoZ9) {
  FpModule z = FpModule::free(3, 1);
  ModuleMap f(z, FpModule::cyclic(3, 2), mat({{3}}));
  Subquotients s = subquotients(f);
  EXPECT_EQ(s.kernel, z);
  EXPECT_EQ(s.kernel_inclusion.matrix()(0, 0).valuation(3), 1);
  EXPECT_EQ(s.image, FpModule::cyclic(3, 1));
  EXPECT_EQ(s.cokernel, FpModule::cyclic(3, 1));
  EXPECT_TRUE((f * s.kernel_inclusion).is_zero());
  EXPECT_TRUE((s.cokernel_projection * s.image_inclusion).is_zero());
  EXPECT_EQ(s.image_inclusion * s.corestriction, f);
}

TEST(Subquotients, IdentityAndZero) {
  FpModule z3 = FpModule::cyclic(3, 1);
  Subquotients id = subquotients(ModuleMap::identity(z3));
  EXPECT_TRUE(id.kernel.is_zero());
  EXPECT_TRUE(id.cokernel.is_zero());
  FpModule z = FpModule::free(3, 1);
  Subquotients zero = subquotients(ModuleMap::zero(z, z));
  EXPECT_EQ(zero.kernel, z);
  EXPECT_EQ(zero.cokernel, z);
}

TEST(SubquotientsProperty, ExactnessWitnesses) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("subq", c);
    FpModule a = testing::random_module(rng, 3);
    FpModule b = testing::random_module(rng, 3);
    ModuleMap f = testing::random_map(rng, a, b);
    Subquotients s = subquotients(f);
    ASSERT_TRUE((f * s.kernel_inclusion).is_zero());
    ASSERT_TRUE(s.kernel_inclusion.is_mono());
    ASSERT_TRUE(s.image_inclusion.is_mono());
    ASSERT_TRUE(s.corestriction.is_epi());
    ASSERT_TRUE(s.cokernel_projection.is_epi());
    ASSERT_TRUE((s.cokernel_projection * f).is_zero());
    ASSERT_EQ(s.image_inclusion * s.corestriction, f);
    // Kernel of the cokernel projection is the image.
    ASSERT_EQ(subquotients(s.cokernel_projection).kernel, s.image);
    // Cokernel of the kernel inclusion is the image (first iso theorem).
    ASSERT_EQ(subquotients(s.kernel_inclusion).cokernel, s.image);
  }
}

TEST(SubquotientsProperty, ImageInsideKernelForZeroComposite) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("subq-compose", c);
    FpModule a = testing::random_module(rng, 3);
    FpModule b = testing::random_module(rng, 3);
    FpModule d = testing::random_module(rng, 3);
    ModuleMap f = testing::random_map(rng, a, b);
    ModuleMap g = cokernel_projection(f);
    (void)d;
    Subquotients sf = subquotients(f);
    ModuleMap k = kernel_inclusion(g);
    ModuleMap witness = lift_through(sf.image_inclusion, k);
    ASSERT_TRUE(witness.is_mono());
    ASSERT_EQ(k * witness, sf.image_inclusion);
  }
}

TEST(DirectSum, Examples) {
  FpModule z3 = FpModule::cyclic(3, 1);
  DirectSum s = direct_sum({z3, FpModule::free(3, 1)}, 3);
  EXPECT_EQ(s.module, FpModule(3, 1, {1}));
  EXPECT_TRUE(direct_sum({}, 3).module.is_zero());
  EXPECT_EQ(direct_sum({z3, FpModule::cyclic(3, 2)}, 3).module, FpModule(3, 0, {1, 2}));
}

TEST(DirectSumProperty, BiproductLaws) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("sum", c);
    std::vector<FpModule> ms;
    for (int k = 0; k < 3; ++k) ms.push_back(testing::random_module(rng, 3));
    DirectSum s = direct_sum(ms, 3);
    ModuleMap total = ModuleMap::zero(s.module, s.module);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = 0; j < ms.size(); ++j) {
        ModuleMap pi = s.projection(i) * s.injection(j);
        if (i == j)
          ASSERT_EQ(pi, ModuleMap::identity(ms[i]));
        else
          ASSERT_TRUE(pi.is_zero());
      }
      total = total + s.injection(i) * s.projection(i);
    }
    ASSERT_EQ(total, ModuleMap::identity(s.module));
  }
}

TEST(TensorAndTor, Examples) {
  FpModule z3 = FpModule::cyclic(3, 1);
  FpModule z9 = FpModule::cyclic(3, 2);
  auto t = tensor_and_tor(z3, z9);
  EXPECT_EQ(t.tensor, z3);
  EXPECT_EQ(t.tor, z3);
  FpModule m(3, 1, {1, 2});
  auto u = tensor_and_tor(FpModule::free(3, 1), m);
  EXPECT_EQ(u.tensor, m);
  EXPECT_TRUE(u.tor.is_zero());
  EXPECT_TRUE(tensor_and_tor(FpModule::zero(3), m).tensor.is_zero());
  EXPECT_THROW(tensor_and_tor(z3, FpModule::cyclic(5, 1)), PrimeMismatch);
}

TEST(TensorAndTorProperty, AgreesWithPresentations) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("tensor", c);
    FpModule m = testing::random_module(rng, 3, 2, 3);
    FpModule n = testing::random_module(rng, 3, 2, 3);
    const int gm = m.num_generators(), gn = n.num_generators();
    PMatrix rm = presentation(m), rn = presentation(n);
    // M (x) N = coker [R_M (x) 1, 1 (x) R_N].
    PMatrix left = kron(rm, identity_matrix(gn));
    PMatrix right = kron(identity_matrix(gm), rn);
    PMatrix both(left.rows(), left.cols() + right.cols());
    both << left, right;
    ASSERT_EQ(tensor(m, n).module, canonical_form(gm * gn, both, 3));
    // Tor_1(M, N) = ker(F_1 (x) N -> F_0 (x) N) for F_1 = Z^{#torsion}.
    FpModule f1 = FpModule::free(3, static_cast<int>(m.torsion().size()));
    FpModule f0 = FpModule::free(3, gm);
    ModuleMap res(f1, f0, rm);
    ModuleMap tensored = tensor_maps(res, ModuleMap::identity(n));
    ASSERT_EQ(tor(m, n), subquotients(tensored).kernel);
  }
}

TEST(TensorAndTorProperty, SixTermSequenceIsExact) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("six-term", c);
    FpModule a = testing::random_module(rng, 3);
    FpModule b = testing::random_module(rng, 3);
    FpModule m = testing::random_module(rng, 3, 1, 3);
    // SES 0 -> A' -> B -> C -> 0 from a random map g: B -> A.
    ModuleMap g = testing::random_map(rng, b, a);
    Subquotients s = subquotients(g);
    ModuleMap i = s.kernel_inclusion;
    ModuleMap q = s.corestriction;
    ModuleMap mi = tensor_maps(ModuleMap::identity(m), i);
    ModuleMap mq = tensor_maps(ModuleMap::identity(m), q);
    ASSERT_TRUE((mq * mi).is_zero());
    ASSERT_EQ(subquotients(mq).kernel, subquotients(mi).image);
    ASSERT_TRUE(mq.is_epi());

    // Tor_1(M, -) as the kernel of F_1 (x) - -> F_0 (x) -, natural in the argument.
    ModuleMap res(FpModule::free(3, static_cast<int>(m.torsion().size())), FpModule::free(3, m.num_generators()),
                  presentation(m));
    auto tor_incl = [&](const FpModule& x) { return kernel_inclusion(tensor_maps(res, ModuleMap::identity(x))); };
    auto tor_map = [&](const ModuleMap& h) {
      ModuleMap src = tor_incl(h.source());
      ModuleMap tgt = tor_incl(h.target());
      return lift_through(tensor_maps(ModuleMap::identity(res.source()), h) * src, tgt);
    };
    ModuleMap tor_i = tor_map(i);
    ModuleMap tor_q = tor_map(q);
    ASSERT_TRUE(tor_i.is_mono());
    ASSERT_TRUE((tor_q * tor_i).is_zero());
    ASSERT_EQ(subquotients(tor_q).kernel, subquotients(tor_i).image);
    // The connecting map identifies coker Tor(q) with ker(M (x) i).
    ASSERT_EQ(subquotients(tor_q).cokernel, subquotients(mi).kernel);
  }
}

TEST(MapAlgebra, Examples) {
  FpModule z = FpModule::free(3, 1);
  ModuleMap three = ModuleMap::scalar(z, 3);
  EXPECT_EQ(three * three, ModuleMap::scalar(z, 9));
  EXPECT_TRUE(three.is_mono());
  EXPECT_FALSE(three.is_epi());
  FpModule z9 = FpModule::cyclic(3, 2);
  EXPECT_TRUE(ModuleMap::scalar(z9, 2).is_iso());
  EXPECT_THROW(three * ModuleMap::identity(z9), CompositionError);
}

TEST(LiftAndDescend, FactorThroughMonoAndEpi) {
  for (int c = 0; c < testing::property_cases(); ++c) {
    auto rng = testing::rng_for("lift", c);
    FpModule a = testing::random_module(rng, 3);
    FpModule b = testing::random_module(rng, 3);
    ModuleMap f = testing::random_map(rng, a, b);
    Subquotients s = subquotients(f);
    ModuleMap h = descend_through(f, s.corestriction);
    ASSERT_EQ(h * s.corestriction, f);
    ModuleMap l = lift_through(f, s.image_inclusion);
    ASSERT_EQ(l, s.corestriction);
  }
}

}  // namespace
}  // namespace kanlim
