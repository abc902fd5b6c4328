#include "kanlim/io/io.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "kanlim/palgebra/errors.hpp"

namespace kanlim::io {

namespace {

Json big_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<long long>(z.get_si()));
  return Json(z.get_str());
}

std::string part_text(const Json& j) {
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  throw InvalidInput("scalar part must be an integer or a decimal string");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw InvalidInput(std::string("field '") + key + "' must be an array");
  return v;
}

std::string name_of(const Json& j) {
  if (!j.is_string()) throw InvalidInput("poset element names must be strings");
  return j.get<std::string>();
}

}  // namespace

Json to_json(const PScalar& x) { return Json::array({big_to_json(x.numerator()), big_to_json(x.denominator())}); }

PScalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return PScalar::parse(part_text(j));
  if (!j.is_array() || j.size() != 2) throw InvalidInput("scalar must be [numerator, denominator]");
  try {
    return PScalar::parse(part_text(j[0]) + "/" + part_text(j[1]));
  } catch (const InvalidScalar& e) {
    throw InvalidInput(e.what());
  }
}

Json to_json(const FpModule& m) {
  return Json{{"rank", m.free_rank()}, {"torsion", m.torsion()}};
}

FpModule module_from_json(const Json& j, int p) {
  const int rank = int_field(j, "rank");
  std::vector<int> torsion;
  if (j.contains("torsion")) {
    for (const auto& e : array_field(j, "torsion")) {
      if (!e.is_number_integer()) throw InvalidInput("torsion exponents must be integers");
      torsion.push_back(e.get<int>());
    }
  }
  if (rank < 0) throw InvalidInput("negative rank");
  for (int e : torsion)
    if (e < 1) throw InvalidInput("torsion exponents must be positive");
  return FpModule(p, rank, torsion);
}

Json to_json(const ModuleMap& f) {
  Json entries = Json::array();
  const PMatrix& m = f.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
  return Json{{"entries", entries}};
}

ModuleMap map_from_json(const Json& j, const FpModule& source, const FpModule& target) {
  const Json& entries = array_field(j, "entries");
  const int rows = target.num_generators();
  const int cols = source.num_generators();
  if (static_cast<int>(entries.size()) != rows * cols)
    throw InvalidInput("map has " + std::to_string(entries.size()) + " entries, expected " +
                       std::to_string(rows) + "x" + std::to_string(cols));
  PMatrix m = zero_matrix(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = scalar_from_json(entries[i * cols + k]);
  return ModuleMap(source, target, std::move(m));
}

Json to_json(const CyclicComplex& c) {
  Json mods = Json::array(), diffs = Json::array();
  for (const auto& m : c.modules()) mods.push_back(to_json(m));
  for (const auto& d : c.differentials()) diffs.push_back(to_json(d));
  return Json{{"p", c.p()}, {"N", c.N()}, {"modules", mods}, {"differentials", diffs}};
}

CyclicComplex complex_from_json(const Json& j) {
  const int p = int_field(j, "p");
  const Json& mods = array_field(j, "modules");
  const Json& diffs = array_field(j, "differentials");
  const int N = j.contains("N") ? int_field(j, "N") : static_cast<int>(mods.size());
  if (static_cast<int>(mods.size()) != N || static_cast<int>(diffs.size()) != N)
    throw InvalidInput("complex needs N modules and N differentials");
  std::vector<FpModule> m;
  for (const auto& x : mods) m.push_back(module_from_json(x, p));
  std::vector<ModuleMap> d;
  for (int n = 0; n < N; ++n) d.push_back(map_from_json(diffs[n], m[n], m[(n + 1) % N]));
  return CyclicComplex(p, std::move(m), std::move(d));
}

Json to_json(const FinPoset& p) {
  Json hasse = Json::array();
  for (auto [a, b] : p.hasse()) hasse.push_back(Json::array({p.name(a), p.name(b)}));
  return Json{{"elements", p.names()}, {"hasse", hasse}};
}

FinPoset poset_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& e : array_field(j, "elements")) names.push_back(name_of(e));
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& e : array_field(j, "hasse")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("hasse entries must be [lower, upper]");
    rel.emplace_back(name_of(e[0]), name_of(e[1]));
  }
  return FinPoset::from_names(std::move(names), rel);
}

Json to_json(const CxDiagram& x) {
  const FinPoset& s = x.shape();
  Json verts = Json::array(), edges = Json::array();
  for (const auto& v : x.vertices()) verts.push_back(to_json(v));
  for (std::size_t k = 0; k < s.hasse().size(); ++k) {
    auto [a, b] = s.hasse()[k];
    Json comps = Json::array();
    for (const auto& c : x.edge(static_cast<int>(k)).components()) comps.push_back(to_json(c));
    edges.push_back(Json{{"from", s.name(a)}, {"to", s.name(b)}, {"components", comps}});
  }
  return Json{{"p", x.zero_object().p()}, {"N", x.zero_object().N()}, {"poset", to_json(s)},
              {"vertices", verts}, {"edges", edges}};
}

CxDiagram diagram_from_json(const Json& j) {
  const int p = int_field(j, "p");
  const int N = int_field(j, "N");
  FinPoset shape = poset_from_json(field(j, "poset"));
  const Json& vj = array_field(j, "vertices");
  if (static_cast<int>(vj.size()) != shape.size()) throw InvalidInput("one vertex complex per poset element expected");
  std::vector<CyclicComplex> verts;
  for (const auto& v : vj) {
    verts.push_back(complex_from_json(v));
    if (verts.back().p() != p || verts.back().N() != N) throw InvalidInput("vertex complex has a different p or N");
  }
  std::vector<ChainMap> edges(shape.hasse().size());
  std::vector<bool> seen(edges.size(), false);
  for (const auto& e : array_field(j, "edges")) {
    const int a = shape.index(name_of(field(e, "from")));
    const int b = shape.index(name_of(field(e, "to")));
    std::size_t k = 0;
    while (k < shape.hasse().size() && shape.hasse()[k] != std::make_pair(a, b)) ++k;
    if (k == shape.hasse().size()) throw InvalidInput("edge " + shape.name(a) + " -> " + shape.name(b) + " is not a covering relation");
    if (seen[k]) throw InvalidInput("duplicate edge " + shape.name(a) + " -> " + shape.name(b));
    const Json& comps = array_field(e, "components");
    if (static_cast<int>(comps.size()) != N) throw InvalidInput("edge needs one component per degree");
    std::vector<ModuleMap> c;
    for (int n = 0; n < N; ++n) c.push_back(map_from_json(comps[n], verts[a].module(n), verts[b].module(n)));
    edges[k] = ChainMap(verts[a], verts[b], std::move(c));
    seen[k] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) {
      auto [a, b] = shape.hasse()[k];
      throw InvalidInput("missing edge " + shape.name(a) + " -> " + shape.name(b));
    }
  return cx_diagram(shape, p, N, std::move(verts), std::move(edges));
}

PosetMap poset_map_from_json(const Json& j, const FinPoset& source) {
  FinPoset target = poset_from_json(field(j, "target"));
  const Json& im = array_field(j, "images");
  if (static_cast<int>(im.size()) != source.size()) throw InvalidInput("one image per source element expected");
  std::vector<int> images;
  for (const auto& x : im) images.push_back(target.index(name_of(x)));
  return PosetMap(source, std::move(target), std::move(images));
}

Json to_json(const SseqPage& page) {
  Json cells = Json::array();
  for (const auto& [st, m] : page.cells) cells.push_back(Json{{"s", st.first}, {"t", st.second}, {"module", to_json(m)}});
  return Json{{"r", page.r}, {"cells", cells}};
}

Json to_json(const SpectralSequence& ss, const FinPoset& target) {
  Json pages = Json::array();
  for (const auto& pg : ss.pages) pages.push_back(to_json(pg));
  Json einf = to_json(ss.e_infinity);
  einf.erase("r");
  return Json{{"vertex", target.name(ss.vertex)}, {"columns", ss.columns}, {"pages", pages}, {"e_infinity", einf},
              {"collapsed", ss.pages.back().cells == ss.e_infinity.cells}};
}

Json to_json(const std::vector<FpModule>& table) {
  Json out = Json::array();
  for (const auto& m : table) out.push_back(to_json(m));
  return out;
}

Json to_json(const ReportCheck& check) {
  Json w = Json::object();
  for (const auto& [k, v] : check.witness) {
    if (!w.contains(k)) {
      w[k] = v;
    } else {
      if (!w[k].is_array()) w[k] = Json::array({w[k]});
      w[k].push_back(v);
    }
  }
  return Json{{"anchor", check.anchor}, {"name", check.name}, {"status", check.passed ? "pass" : "fail"},
              {"witness", w}};
}

Json to_json(const PipelineReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json bz = Json::array();
  for (const auto& b : r.bz) {
    bz.push_back(Json{{"n", b.n},
                      {"zeta_row", {to_json(b.zeta.left), to_json(b.zeta.middle), to_json(b.zeta.right)}},
                      {"gamma_row", {to_json(b.gamma.left), to_json(b.gamma.middle), to_json(b.gamma.right)}},
                      {"vertical_mono", b.vertical_mono},
                      {"vertical_kernel", to_json(b.vertical_kernel)}});
  }
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"p", r.c.p()},
              {"N", r.c.N()},
              {"replaced", r.replaced},
              {"notes", notes},
              {"objects", to_json(r.q.complex.modules())},
              {"cohomology", to_json(cohomology_all(r.q.complex))},
              {"oracle", to_json(kunneth_oracle(r.c, r.c_tilde))},
              {"bz", bz},
              {"checks", checks},
              {"status", r.passed() ? "pass" : "fail"}};
}

Json to_json(const RoundTrip& rt, const CyclicComplex& input) {
  const FinPoset& s = rt.crown.diagram().shape();
  Json crown = Json::object();
  for (int v = 0; v < s.size(); ++v) crown[s.name(v)] = to_json(rt.crown.diagram().at(v));
  return Json{{"input", to_json(input)},
              {"crown", crown},
              {"q", to_json(rt.q_in_source_basis)},
              {"colimit", to_json(rt.colimit_in_source_basis)},
              {"comparison_iso", rt.comparison_iso},
              {"q_exact", rt.q_exact},
              {"colimit_exact", rt.colimit_exact},
              {"hocolim_quasi_iso", rt.hocolim_quasi_iso},
              {"roundtrip", rt.exact() ? "exact" : "failed"}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace kanlim::io
