#include <gtest/gtest.h>

#include "kanlim/palgebra/errors.hpp"
#include "kanlim/verify/acceptance.hpp"
#include "kanlim/verify/random.hpp"
#include "test_support.hpp"

namespace kanlim {
namespace {

TEST(RandomComplexProperty, BoundsRespected) {
  for (int k = 0; k < 200; ++k) {
    auto rng = gen::stream(testing::base_seed(), "bounds", k);
    const int rank = 1 + k % 3, exp = 1 + k % 2;
    const bool flat = k % 4 == 0;
    CyclicComplex c = gen::complex(rng, 3, 4, gen::Bounds{rank, exp, flat});
    for (const auto& m : c.modules()) {
      EXPECT_LE(m.num_generators(), rank) << k;
      for (int e : m.torsion()) EXPECT_LE(e, exp) << k;
      if (flat) EXPECT_TRUE(m.is_flat()) << k;
    }
  }
}

TEST(RandomComplex, Reproducible) {
  auto a = gen::stream(1, "x", 3), b = gen::stream(1, "x", 3), c = gen::stream(2, "x", 3);
  CyclicComplex x = gen::complex(a, 3, 4, {}), y = gen::complex(b, 3, 4, {});
  EXPECT_EQ(x, y);
  std::vector<CyclicComplex> differ;
  for (int k = 0; k < 5; ++k) differ.push_back(gen::complex(c, 3, 4, {}));
  EXPECT_TRUE(std::any_of(differ.begin(), differ.end(), [&](const CyclicComplex& z) { return z != x; }));
}

TEST(Acceptance, Validation) {
  verify::AcceptanceConfig c;
  c.p = 4;
  EXPECT_THROW(verify::validate(c), InvalidInput);
  c.p = 2;
  EXPECT_THROW(verify::validate(c), InvalidInput);
  c.p = 5;
  c.cases = 0;
  EXPECT_THROW(verify::validate(c), InvalidInput);
  c.cases = 1;
  c.max_exp = 0;
  EXPECT_THROW(verify::validate(c), InvalidInput);
  EXPECT_THROW(verify::run_acceptance(verify::AcceptanceConfig{}, {"A9"}), InvalidInput);
}

TEST(Acceptance, IndependentOfThreads) {
  verify::AcceptanceConfig c;
  c.cases = 4;
  c.threads = 1;
  auto one = verify::run_acceptance(c, {"A1", "A5"});
  c.threads = 3;
  auto three = verify::run_acceptance(c, {"A1", "A5"});
  ASSERT_EQ(one.size(), 2u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].clauses, three[i].clauses);
    EXPECT_EQ(one[i].passed, three[i].passed);
    EXPECT_TRUE(one[i].passed) << one[i].id;
  }
}

TEST(Acceptance, OtherPrime) {
  // p = 5 has period 8; no golden cases, random suites still pass
  verify::AcceptanceConfig c;
  c.p = 5;
  c.cases = 2;
  c.max_rank = 1;
  c.max_exp = 1;
  for (const auto& r : verify::run_acceptance(c, {"A1", "A5"})) EXPECT_TRUE(r.passed) << r.id;
}

TEST(Acceptance, SummaryLine) {
  verify::CriterionResult r;
  r.id = "A1";
  r.title = "t";
  r.cases = 3;
  EXPECT_EQ(verify::summary_line(r), "PASS A1 t (3 cases)");
  r.passed = false;
  r.failed = 1;
  EXPECT_EQ(verify::summary_line(r), "FAIL A1 t (3 cases, 1 failing)");
}

}  // namespace
}  // namespace kanlim
