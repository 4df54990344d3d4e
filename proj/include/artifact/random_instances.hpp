#pragma once

#include <cstdint>
#include <vector>

#include "artifact/complexes.hpp"

namespace artifact::instances {

struct RandomComplexParams {
  int min_degree = 0;
  int max_degree = 2;
  std::size_t max_dim = 4;  // per degree, inclusive
  int max_level = 2;
  double density = 0.6;
  int coeff_span = 2;
};

// Reproducible random bounded filtered complex on an adapted basis.  Each row
// of d^n is a random functional respecting the filtration and vanishing on
// im d^{n-1}, so d∘d = 0 by construction.
complexes::FilteredComplex random_filtered_complex(std::uint64_t seed, const RandomComplexParams& params = {});

// Random filtered chain map: a random element of the space of filtered maps
// commuting with the differentials (zero when that space is zero).
complexes::FilteredChainMap random_chain_map(std::uint64_t seed, const complexes::FilteredComplex& source,
                                             const complexes::FilteredComplex& target);

}  // namespace artifact::instances
