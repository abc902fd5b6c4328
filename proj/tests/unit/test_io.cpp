#include <gtest/gtest.h>

#include "kanlim/io/io.hpp"
#include "kanlim/palgebra/errors.hpp"
#include "kanlim/verify/random.hpp"
#include "test_support.hpp"

namespace kanlim {
namespace {

using io::Json;

TEST(IoScalar, RoundTrip) {
  for (PScalar x : {PScalar(0), PScalar(-7), PScalar(3, 4), PScalar(-9, 2)})
    EXPECT_EQ(io::scalar_from_json(io::to_json(x)), x);
  EXPECT_EQ(io::to_json(PScalar(3, 4)), Json::parse("[3, 4]"));
  // beyond 64 bits the parts are strings
  PScalar big = PScalar::parse("123456789012345678901234567890/7");
  Json j = io::to_json(big);
  EXPECT_TRUE(j[0].is_string());
  EXPECT_EQ(io::scalar_from_json(j), big);
  EXPECT_EQ(io::scalar_from_json(Json(5)), PScalar(5));
  EXPECT_THROW(io::scalar_from_json(Json::parse("[1, 0]")), Error);
  EXPECT_THROW(io::scalar_from_json(Json::parse("[1]")), InvalidInput);
}

TEST(IoModule, Format) {
  FpModule m(3, 2, {1, 3});
  EXPECT_EQ(io::to_json(m).dump(), R"({"rank":2,"torsion":[1,3]})");
  EXPECT_EQ(io::module_from_json(io::to_json(m), 3), m);
  EXPECT_EQ(io::module_from_json(Json::parse(R"({"rank":1})"), 3), FpModule::free(3, 1));
  EXPECT_THROW(io::module_from_json(Json::parse(R"({"rank":-1})"), 3), InvalidInput);
  EXPECT_THROW(io::module_from_json(Json::parse(R"({"torsion":[1]})"), 3), InvalidInput);
  EXPECT_THROW(io::module_from_json(Json::parse(R"({"rank":0,"torsion":[0]})"), 3), InvalidInput);
}

TEST(IoMap, RowMajor) {
  FpModule a = FpModule::free(3, 2), b = FpModule::free(3, 1);
  PMatrix m = zero_matrix(1, 2);
  m(0, 0) = PScalar(1);
  m(0, 1) = PScalar(1, 2);
  ModuleMap f(a, b, m);
  EXPECT_EQ(io::to_json(f).dump(), R"({"entries":[[1,1],[1,2]]})");
  EXPECT_EQ(io::map_from_json(io::to_json(f), a, b), f);
  EXPECT_THROW(io::map_from_json(io::to_json(f), a, FpModule::free(3, 3)), InvalidInput);
}

TEST(IoComplexProperty, RoundTrip) {
  for (int k = 0; k < testing::property_cases(); ++k) {
    auto rng = gen::stream(testing::base_seed(), "io-complex", k);
    CyclicComplex c = gen::complex(rng, 3, 4, gen::Bounds{3, 3, false});
    Json j = io::to_json(c);
    EXPECT_EQ(io::complex_from_json(Json::parse(j.dump())), c) << k;
  }
}

TEST(IoComplex, Rejects) {
  Json j = io::to_json(CyclicComplex::unit(3, 4));
  Json bad = j;
  bad["modules"].erase(0);
  EXPECT_THROW(io::complex_from_json(bad), InvalidInput);
  bad = j;
  bad["differentials"][0]["entries"] = Json::parse("[[1,1]]");
  EXPECT_THROW(io::complex_from_json(bad), InvalidInput);
  // d^2 != 0
  Json d2 = Json::parse(R"({"p":3,"N":4,"modules":[{"rank":1},{"rank":1},{"rank":1},{"rank":0}],
    "differentials":[{"entries":[[1,1]]},{"entries":[[1,1]]},{"entries":[]},{"entries":[]}]})");
  EXPECT_THROW(io::complex_from_json(d2), InvalidComplex);
  // map not well defined on torsion
  Json tors = Json::parse(R"({"p":3,"N":4,"modules":[{"rank":0,"torsion":[1]},{"rank":1},{"rank":0},{"rank":0}],
    "differentials":[{"entries":[[1,1]]},{"entries":[]},{"entries":[]},{"entries":[]}]})");
  EXPECT_THROW(io::complex_from_json(tors), Error);
}

TEST(IoPoset, RoundTripAndErrors) {
  for (const FinPoset& p : {posets::crown(4), posets::d_poset(4), posets::vee()}) {
    FinPoset q = io::poset_from_json(io::to_json(p));
    EXPECT_EQ(q.names(), p.names());
    EXPECT_EQ(q.hasse(), p.hasse());
  }
  EXPECT_THROW(io::poset_from_json(Json::parse(R"({"elements":["a","b"],"hasse":[["a","b"],["b","a"]]})")),
               NotAPoset);
  EXPECT_THROW(io::poset_from_json(Json::parse(R"({"elements":["a"],"hasse":[["a","z"]]})")), ElementNotFound);
}

TEST(IoDiagramProperty, RoundTrip) {
  for (int k = 0; k < testing::property_cases() / 4; ++k) {
    auto rng = gen::stream(testing::base_seed(), "io-diagram", k);
    FinPoset shape = gen::poset(rng, 4);
    CxDiagram x = gen::cx_diagram(rng, shape, 3, 4, gen::Bounds{1, 2, false}, k % 2 == 0);
    CxDiagram y = io::diagram_from_json(Json::parse(io::to_json(x).dump()));
    EXPECT_EQ(y, x) << k;
  }
}

TEST(IoDiagram, MissingEdge) {
  CxDiagram x = CxDiagram::zero(posets::vee(), CyclicComplex::zero(3, 4));
  Json j = io::to_json(x);
  j["edges"].erase(0);
  EXPECT_THROW(io::diagram_from_json(j), InvalidInput);
}

TEST(IoPage, Format) {
  SseqPage page;
  page.r = 2;
  page.cells[{-1, 4}] = FpModule::cyclic(3, 1);
  EXPECT_EQ(io::to_json(page).dump(), R"({"r":2,"cells":[{"s":-1,"t":4,"module":{"rank":0,"torsion":[1]}}]})");
}

TEST(IoReport, ChecksCarryAnchors) {
  CyclicComplex m = moore_example();
  PipelineReport r = smash_pipeline(m, CyclicComplex::unit(3, 4), PipelineOptions{true, false, false});
  Json j = io::to_json(r);
  ASSERT_FALSE(j["checks"].empty());
  for (const auto& c : j["checks"]) {
    EXPECT_FALSE(c["anchor"].get<std::string>().empty());
    EXPECT_TRUE(c["status"] == "pass" || c["status"] == "fail");
    EXPECT_TRUE(c["witness"].is_object());
  }
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j.dump(), io::to_json(smash_pipeline(m, CyclicComplex::unit(3, 4), PipelineOptions{true, false, false})).dump());
}

TEST(IoReport, RepeatedWitnessKeysBecomeArrays) {
  ReportCheck c{"a", "n", false, {{"failure", "x"}, {"failure", "y"}, {"other", "z"}}};
  Json j = io::to_json(c);
  EXPECT_EQ(j["witness"]["failure"], Json::parse(R"(["x","y"])"));
  EXPECT_EQ(j["witness"]["other"], "z");
}

TEST(IoFile, Errors) {
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), InvalidInput);
}

}  // namespace
}  // namespace kanlim
