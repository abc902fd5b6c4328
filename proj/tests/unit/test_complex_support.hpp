#pragma once

#include "kanlim/complexes/complex.hpp"
#include "kanlim/verify/random.hpp"

namespace kanlim::testing {

inline CyclicComplex moore(int p) { return moore_complex(p); }

inline CyclicComplex contractible(const FpModule& m, int degree, int N) {
  return contractible_complex(m, degree, N);
}

inline CyclicComplex random_complex(std::mt19937_64& rng, int p, int N) {
  return gen::complex(rng, p, N, gen::Bounds{3, 3, false});
}

inline CyclicComplex random_flat_complex(std::mt19937_64& rng, int p, int N) {
  return gen::complex(rng, p, N, gen::Bounds{3, 3, true});
}

inline ChainMap random_chain_map(std::mt19937_64& rng, const CyclicComplex& x, const CyclicComplex& y) {
  return gen::chain_map(rng, x, y);
}

inline CyclicComplex padded_replacement(std::mt19937_64& rng, const CyclicComplex& flat) {
  return gen::padded(rng, flat);
}

}  // namespace kanlim::testing
