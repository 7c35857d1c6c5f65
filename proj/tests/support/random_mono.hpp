// Random monomial ideals for property tests.
#pragma once

#include <random>

#include "defspace/monomial_ideal.hpp"

namespace testsupport {

inline defspace::MonomialIdeal random_monomial_ideal(std::mt19937& rng, std::size_t arity, int max_entry,
                                                     int max_gens, const std::vector<std::size_t>* vars = nullptr) {
  std::uniform_int_distribution<int> count(1, max_gens);
  std::uniform_int_distribution<int> entry(0, max_entry);
  std::vector<defspace::ExponentVector> gens;
  int k = count(rng);
  for (int g = 0; g < k; ++g) {
    defspace::ExponentVector e(arity, 0);
    if (vars) {
      for (std::size_t v : *vars) e[v] = entry(rng);
    } else {
      for (auto& x : e) x = entry(rng);
    }
    gens.push_back(e);
  }
  return defspace::delta_min(gens, arity);
}

}  // namespace testsupport
