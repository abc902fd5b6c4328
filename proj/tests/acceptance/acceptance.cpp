// Runs the acceptance criteria A1..A8 with the default configuration and
// prints one line per criterion. Exit status 0 only when all pass.
#include <cstdlib>
#include <iostream>

#include "kanlim/verify/acceptance.hpp"
#include "kanlim/verify/random.hpp"

int main(int argc, char** argv) {
  kanlim::verify::AcceptanceConfig config;
  config.seed = kanlim::gen::seed_from_env(config.seed);
  if (const char* c = std::getenv("KANLIM_CASES")) config.cases = std::max(1, std::atoi(c));
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);

  const auto results = ids.empty() ? kanlim::verify::run_acceptance(config)
                                   : kanlim::verify::run_acceptance(config, ids);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << kanlim::verify::summary_line(r) << "\n";
    for (const auto& c : r.clauses) std::cout << "    " << c << "\n";
    for (const auto& d : r.details) std::cout << "    > " << d << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
