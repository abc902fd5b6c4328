#include <gtest/gtest.h>

#include <algorithm>

#include "kanlim/palgebra/errors.hpp"
#include "kanlim/posets/poset.hpp"

namespace kanlim {
namespace {

using namespace posets;

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

TEST(FinPoset, RejectsCycles) {
  EXPECT_THROW(FinPoset::from_names({"a", "b"}, {{"a", "b"}, {"b", "a"}}), NotAPoset);
  EXPECT_THROW(d_poset_literal(4), NotAPoset);
  EXPECT_THROW(FinPoset::from_names({"a"}, {{"a", "x"}}), ElementNotFound);
}

TEST(FinPoset, HasseDropsShortcuts) {
  FinPoset p = FinPoset::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  EXPECT_EQ(p.hasse().size(), 2u);
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_EQ(p.height(), 2);
}

TEST(StandardPosets, Sizes) {
  FinPoset c = crown(4);
  EXPECT_EQ(c.size(), 8);
  EXPECT_EQ(c.height(), 1);
  FinPoset d = d_poset(4);
  EXPECT_EQ(d.size(), 12);
  EXPECT_EQ(d.hasse().size(), 16u);
  EXPECT_EQ(d.height(), 2);
  FinPoset ii = product(interval(), interval());
  EXPECT_EQ(ii.size(), 4);
  EXPECT_EQ(ii.height(), 2);
  FinPoset v = vee();
  EXPECT_EQ(v.minimal_elements(), std::vector<int>{v.index("(0,0)")});
  EXPECT_THROW(crown(3), InvalidComplex);
}

TEST(StandardMaps, PrAndI) {
  PosetMap p = pr(4);
  // |C_4| * |E(C_4)| edges in each factor direction.
  EXPECT_EQ(p.source().hasse().size(), 128u);
  for (auto [a, b] : p.source().hasse()) EXPECT_TRUE(p.target().leq(p(a), p(b)));
  EXPECT_EQ(slice_to(p, p.target().index(zeta(0, 4))).poset.size(), 32);
  PosetMap i = i_map(4);
  EXPECT_EQ(i(i.source().index(beta(1, 4))), i.target().index(gamma(1, 4)));
  EXPECT_TRUE(i.target().leq(i(i.source().index(beta(1, 4))), i.target().index(zeta(0, 4))));
  const FinPoset& cc = p.source();
  EXPECT_EQ(p(cc.index(pair_name(beta(1, 4), zeta(2, 4)))), p.target().index(gamma(3, 4)));
  EXPECT_EQ(p(cc.index(pair_name(beta(3, 4), beta(2, 4)))), p.target().index(beta(1, 4)));
}

TEST(StandardMaps, PV) {
  PosetMap v = p_v();
  const FinPoset& ii = v.source();
  EXPECT_EQ(v(ii.index("(1,1)")), 1);
  EXPECT_EQ(v(ii.index("(0,1)")), 0);
  EXPECT_EQ(v(ii.index("(1,0)")), 0);
  EXPECT_EQ(v(ii.index("(0,0)")), 0);
}

TEST(StandardMaps, Butterflies) {
  for (int N : {4, 8}) {
    for (int n = 0; n < N; ++n) {
      EXPECT_EQ(vo(N, n).poset.size(), 5 * N);
      EXPECT_EQ(w(N, n).poset.size(), 2 * N);
      EXPECT_EQ(vy(N, n).size(), 3 * N);
      PosetMap g = g_map(N, n);
      PosetMap pv = p_vy(N, n);
      PosetMap po = p_vo(N, n);
      // p_VO factors through g.
      EXPECT_EQ(pv.compose(g).images(), po.images());
    }
  }
}

TEST(StandardMaps, BPoset) {
  PosetMap p = pr(4);
  const int g = p.target().index(gamma(0, 4));
  const int z = p.target().index(zeta(0, 4));
  BPoset b = b_poset(p, g, z);
  EXPECT_EQ(b.poset.size(), b.lower.poset.size() + b.upper.poset.size());
  for (int x = 0; x < b.poset.size(); ++x) {
    const bool top = x >= b.lower.poset.size();
    EXPECT_EQ(b.p_b(x), top ? 1 : 0);
    EXPECT_EQ(b.j_b(x), b.upper.elements[b.r_b(x)]);
  }
  EXPECT_THROW(b_poset(p, z, g), NotMonotone);
}

TEST(PosetMap, RejectsNonMonotone) {
  FinPoset i = interval();
  EXPECT_THROW(PosetMap(i, i, {1, 0}), NotMonotone);
  EXPECT_FALSE(is_monotone(i, i, {1, 0}));
  EXPECT_THROW(slice_to(PosetMap::identity(i), 5), ElementNotFound);
}

TEST(Cofinality, Examples) {
  EXPECT_TRUE(is_cofinal(i_map(4)));
  EXPECT_TRUE(is_cofinal(i_map(8)));
  FinPoset pt = FinPoset({"*"}, {});
  EXPECT_FALSE(is_cofinal(PosetMap(pt, interval(), {0})));
  EXPECT_TRUE(is_cofinal(PosetMap(pt, interval(), {1})));
  EXPECT_TRUE(is_cofinal(PosetMap::identity(d_poset(4))));
}

TEST(ExportDot, EdgeCounts) {
  EXPECT_EQ(count(export_dot(interval()), "->"), 1);
  EXPECT_EQ(count(export_dot(vee()), "->"), 2);
  std::string c4 = export_dot(crown(4));
  EXPECT_EQ(count(c4, "->"), 8);
  EXPECT_EQ(count(c4, ";\n") - count(c4, "->") - 1, 8);  // node lines
  EXPECT_EQ(export_dot(d_poset(4)), export_dot(d_poset(4)));
}

std::vector<FinPoset> standard() {
  return {interval(), vee(), crown(4), d_poset(4), crown(8), d_poset(8), vy(4, 1), vo(4, 2).poset};
}

TEST(PosetProperty, ProductHeightAdds) {
  auto all = standard();
  for (const auto& a : all)
    for (const auto& b : all) {
      if (a.size() * b.size() > 300) continue;
      ASSERT_EQ(product(a, b).height(), a.height() + b.height());
    }
}

TEST(PosetProperty, LinearExtensionRespectsOrder) {
  for (const auto& p : standard()) {
    const auto& lin = p.linear_extension();
    std::vector<int> pos(p.size());
    for (int k = 0; k < p.size(); ++k) pos[lin[k]] = k;
    for (auto [a, b] : p.hasse()) ASSERT_LT(pos[a], pos[b]);
  }
}

TEST(PosetProperty, SlicesAreMonotone) {
  for (int N : {4, 8}) {
    for (const PosetMap& f : {pr(N), i_map(N)}) {
      const FinPoset& d = f.target();
      for (int a = 0; a < d.size(); ++a)
        for (int b = 0; b < d.size(); ++b) {
          if (!d.leq(a, b)) continue;
          auto sa = slice_to(f, a).elements, sb = slice_to(f, b).elements;
          ASSERT_TRUE(std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
        }
    }
  }
}

}  // namespace
}  // namespace kanlim
