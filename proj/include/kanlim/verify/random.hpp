#pragma once

#include <cstdint>
#include <random>

#include "kanlim/complexes/complex.hpp"
#include "kanlim/diagrams/diagram.hpp"

namespace kanlim::gen {

using Rng = std::mt19937_64;

struct Bounds {
  int max_rank = 3;  // generators per module (per degree for complexes)
  int max_exp = 3;
  bool flat = false;
};

/// Seed from KANLIM_SEED when set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);
/// Independent stream for case `index` of a named suite.
Rng stream(std::uint64_t seed, const std::string& suite, int index);

int uniform(Rng& rng, int lo, int hi);
/// Small integer, biased towards multiples of p.
PScalar entry(Rng& rng, int p);
FpModule module(Rng& rng, int p, const Bounds& b);
/// Random well-defined map src -> tgt.
ModuleMap map(Rng& rng, const FpModule& src, const FpModule& tgt);

/// Random automorphism of M together with its inverse.
struct Automorphism {
  ModuleMap forward, backward;
};
Automorphism automorphism(Rng& rng, const FpModule& m);

/// Random cyclic complex: a sum of one-term and two-term pieces (M in one
/// degree, or a random map A -> B in adjacent degrees), conjugated degreewise
/// by random automorphisms. Every degree has at most b.max_rank generators.
CyclicComplex complex(Rng& rng, int p, int N, const Bounds& b);
/// Iso C -> C' onto a scrambled copy.
ChainMap scramble(Rng& rng, const CyclicComplex& c);
/// Random Z_(p)-combination of chain map generators.
ChainMap chain_map(Rng& rng, const CyclicComplex& x, const CyclicComplex& y);

/// Flat complex quasi-isomorphic to `flat` built differently: contractible
/// pieces are added and everything is scrambled.
CyclicComplex padded(Rng& rng, const CyclicComplex& flat);

/// Random poset on 1..max_size elements (relations drawn upper-triangularly).
FinPoset poset(Rng& rng, int max_size);
/// Random monotone map; falls back to a constant map when the greedy choice
/// gets stuck.
PosetMap monotone_map(Rng& rng, const FinPoset& source, const FinPoset& target);

/// Random diagram built along a linear extension: each vertex receives a map
/// from the colimit of everything below it. With `reedy` that map is a split
/// mono followed by a random automorphism, so all latching maps are mono.
ModDiagram mod_diagram(Rng& rng, const FinPoset& shape, int p, const Bounds& b, bool reedy);
CxDiagram cx_diagram(Rng& rng, const FinPoset& shape, int p, int N, const Bounds& b, bool reedy);

}  // namespace kanlim::gen
