// kanlim: command-line front end.
//
//   kanlim verify      [--p --seed --cases --max-rank --max-exp --out]
//   kanlim smash       a.json b.json [--out]
//   kanlim reconstruct c.json [--out]
//   kanlim sseq        diagram.json [map.json] [--out]
//   kanlim poset       NAME|poset.json [--dot] [--out]
//   kanlim randomgen   [--p --seed --cases --max-rank --max-exp --flat --out DIR]
//
// Exit status: 0 pass, 1 check failure, 2 invalid input, 64 usage.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kanlim/franke/franke.hpp"
#include "kanlim/io/io.hpp"
#include "kanlim/palgebra/errors.hpp"
#include "kanlim/verify/acceptance.hpp"
#include "kanlim/verify/random.hpp"

namespace {

using kanlim::io::Json;

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInvalidInput = 2;
constexpr int kUsage = 64;

struct Options {
  int p = 3;
  std::uint64_t seed = 42;
  int cases = 50;
  int max_rank = 3;
  int max_exp = 3;
  std::string out;
  bool dot = false;
  bool flat = false;
  std::vector<std::string> files;
  std::string name;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t effective_seed(const Options& o) { return kanlim::gen::seed_from_env(o.seed); }

kanlim::verify::AcceptanceConfig acceptance_config(const Options& o) {
  kanlim::verify::AcceptanceConfig c;
  c.p = o.p;
  c.seed = effective_seed(o);
  c.cases = o.cases;
  c.max_rank = o.max_rank;
  c.max_exp = o.max_exp;
  kanlim::verify::validate(c);
  return c;
}

int run_verify(const Options& o) {
  const auto config = acceptance_config(o);
  const auto results = kanlim::verify::run_acceptance(config);
  Json criteria = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    std::cout << kanlim::verify::summary_line(r) << "\n";
    for (const auto& c : r.clauses) std::cout << "    " << c << "\n";
    for (const auto& d : r.details) std::cout << "    > " << d << "\n";
    criteria.push_back(Json{{"id", r.id},
                            {"title", r.title},
                            {"anchor", r.anchor},
                            {"status", r.passed ? "pass" : "fail"},
                            {"cases", r.cases},
                            {"failed", r.failed},
                            {"clauses", r.clauses},
                            {"details", r.details}});
    ok = ok && r.passed;
  }
  if (!o.out.empty()) {
    Json report{{"config",
                 {{"p", config.p}, {"seed", config.seed}, {"cases", config.cases}, {"max_rank", config.max_rank},
                  {"max_exp", config.max_exp}}},
                {"criteria", criteria},
                {"status", ok ? "pass" : "fail"}};
    kanlim::io::write_text(o.out, dump(report));
  }
  return ok ? kPass : kCheckFailure;
}

int run_smash(const Options& o) {
  auto c = kanlim::io::complex_from_json(kanlim::io::read_json_file(o.files.at(0)));
  auto ct = kanlim::io::complex_from_json(kanlim::io::read_json_file(o.files.at(1)));
  kanlim::PipelineReport rep = kanlim::smash_pipeline(c, ct);
  Json j = kanlim::io::to_json(rep);
  if (o.out.empty()) {
    std::cout << dump(j);
  } else {
    kanlim::io::write_text(o.out, dump(j));
    std::ostringstream h;
    const auto table = kanlim::cohomology_all(rep.q.complex);
    for (std::size_t n = 0; n < table.size(); ++n) h << (n ? ", " : "") << table[n].to_string();
    std::cout << "H(Q(i*E)) = (" << h.str() << ")\n";
    for (const auto& chk : rep.checks) std::cout << (chk.passed ? "pass " : "fail ") << chk.name << "\n";
  }
  return rep.passed() ? kPass : kCheckFailure;
}

int run_reconstruct(const Options& o) {
  auto c = kanlim::io::complex_from_json(kanlim::io::read_json_file(o.files.at(0)));
  kanlim::RoundTrip rt = kanlim::round_trip(c);
  if (!o.out.empty()) kanlim::io::write_text(o.out, dump(kanlim::io::to_json(rt, c)));
  std::cout << "roundtrip: " << (rt.exact() ? "exact" : "failed") << "\n";
  return rt.exact() ? kPass : kCheckFailure;
}

int run_sseq(const Options& o) {
  kanlim::CxDiagram x = kanlim::io::diagram_from_json(kanlim::io::read_json_file(o.files.at(0)));
  kanlim::PosetMap f = o.files.size() > 1
                           ? kanlim::io::poset_map_from_json(kanlim::io::read_json_file(o.files[1]), x.shape())
                           : kanlim::to_point(x.shape());
  Json vertices = Json::array();
  bool collapsed = true;
  for (const auto& ss : kanlim::sseq_pages(f, x)) {
    vertices.push_back(kanlim::io::to_json(ss, f.target()));
    collapsed = collapsed && ss.pages.back().cells == ss.e_infinity.cells;
  }
  kanlim::io::write_text(o.out, dump(Json{{"vertices", vertices}}));
  return collapsed ? kPass : kCheckFailure;
}

/// C_N, D_N, C_NxC_N, V, I, VxI, point; anything else is read as a file.
kanlim::FinPoset named_poset(const std::string& name) {
  namespace ps = kanlim::posets;
  auto period = [&](const std::string& rest) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != rest.size() || used == 0) throw kanlim::InvalidInput("bad poset name " + name);
    return n;
  };
  if (name == "V") return ps::vee();
  if (name == "I") return ps::interval();
  if (name == "VxI") return kanlim::product(ps::vee(), ps::interval());
  if (name == "point") return kanlim::point();
  if (name.rfind("C_", 0) == 0) {
    const std::size_t x = name.find('x');
    if (x == std::string::npos) return ps::crown(period(name.substr(2)));
    const std::string right = name.substr(x + 1);
    if (right.rfind("C_", 0) != 0) throw kanlim::InvalidInput("bad poset name " + name);
    const int n = period(name.substr(2, x - 2));
    if (period(right.substr(2)) != n) throw kanlim::InvalidInput("crown product needs equal periods");
    return kanlim::product(ps::crown(n), ps::crown(n));
  }
  if (name.rfind("D_", 0) == 0) return ps::d_poset(period(name.substr(2)));
  if (std::filesystem::exists(name)) return kanlim::io::poset_from_json(kanlim::io::read_json_file(name));
  throw kanlim::InvalidInput("unknown poset " + name);
}

int run_poset(const Options& o) {
  kanlim::FinPoset p = named_poset(o.name);
  std::string graph = std::filesystem::exists(o.name) ? "P" : o.name;
  kanlim::io::write_text(o.out, o.dot ? kanlim::export_dot(p, graph) : dump(kanlim::io::to_json(p)));
  return kPass;
}

int run_randomgen(const Options& o) {
  kanlim::verify::AcceptanceConfig check = acceptance_config(o);
  const int N = kanlim::CyclicComplex::period_for(o.p);
  const kanlim::gen::Bounds bounds{o.max_rank, o.max_exp, o.flat};
  std::vector<Json> made;
  for (int k = 0; k < check.cases; ++k) {
    auto rng = kanlim::gen::stream(check.seed, "randomgen", k);
    made.push_back(kanlim::io::to_json(kanlim::gen::complex(rng, o.p, N, bounds)));
  }
  if (o.out.empty() || o.out == "-") {
    Json all = Json::array();
    for (auto& j : made) all.push_back(std::move(j));
    std::cout << dump(all);
    return kPass;
  }
  std::filesystem::create_directories(o.out);
  for (std::size_t k = 0; k < made.size(); ++k) {
    char file[32];
    std::snprintf(file, sizeof file, "complex_%03zu.json", k);
    kanlim::io::write_text((std::filesystem::path(o.out) / file).string(), dump(made[k]));
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact p-local homological algebra: Kan extensions, crowns and the smash pipeline"};
  app.require_subcommand(1);
  app.add_option("--p", o.p, "odd prime (period N = 2p - 2)");
  app.add_option("--seed", o.seed, "random seed (KANLIM_SEED overrides)");
  app.add_option("--cases", o.cases, "random cases per suite");
  app.add_option("--max-rank", o.max_rank, "generators per module");
  app.add_option("--max-exp", o.max_exp, "largest torsion exponent");
  app.add_option("--out", o.out, "output file (directory for randomgen)");
  app.add_flag("--dot", o.dot, "poset: emit Graphviz DOT");
  app.add_flag("--flat", o.flat, "randomgen: torsion-free modules only");
  app.fallthrough();

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  auto* smash = app.add_subcommand("smash", "smash pipeline on two complexes");
  smash->add_option("files", o.files, "two complex files")->required()->expected(2);
  auto* reconstruct = app.add_subcommand("reconstruct", "crown decomposition round trip");
  reconstruct->add_option("file", o.files, "complex file")->required()->expected(1);
  auto* sseq = app.add_subcommand("sseq", "spectral sequence pages of a diagram");
  sseq->add_option("files", o.files, "diagram file, optional poset map file")->required()->expected(1, 2);
  auto* poset = app.add_subcommand("poset", "named poset as JSON or DOT");
  poset->add_option("name", o.name, "C_N, D_N, C_NxC_N, V, I, VxI, point, or a file")->required();
  auto* randomgen = app.add_subcommand("randomgen", "seeded random complexes");
  for (auto* sub : {verify, smash, reconstruct, sseq, poset, randomgen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (e.get_exit_code() == 0) return code;
    std::cerr << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*verify) return run_verify(o);
    if (*smash) return run_smash(o);
    if (*reconstruct) return run_reconstruct(o);
    if (*sseq) return run_sseq(o);
    if (*poset) return run_poset(o);
    if (*randomgen) return run_randomgen(o);
  } catch (const kanlim::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: InvalidInput: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: IO: " << e.what() << "\n";
    return kInvalidInput;
  }
  std::cerr << app.help();
  return kUsage;
}
