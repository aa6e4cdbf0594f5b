#pragma once

#include <string>
#include <vector>

#include "gradreg/gradreg.hpp"

namespace testing_helpers {

template <class Field = gradreg::RationalField>
gradreg::AlgebraPresentation<Field> make(const std::string& label, std::vector<std::string> names,
                                         std::vector<int> degrees, const std::vector<std::string>& rels,
                                         Field f = Field{}) {
  gradreg::AlgebraPresentation<Field> a{f, gradreg::GeneratorSet(std::move(names), std::move(degrees)), {}, label};
  for (const auto& r : rels) a.relations.push_back(gradreg::parse_polynomial(f, a.gens, r));
  return a;
}

template <class Field = gradreg::RationalField>
gradreg::AlgebraPresentation<Field> kxy(Field f = Field{}) {
  return make<Field>("kxy", {"x", "y"}, {1, 1}, {"x*y - y*x"}, f);
}

template <class Field = gradreg::RationalField>
gradreg::AlgebraPresentation<Field> downup(Field f = Field{}) {
  return make<Field>("downup", {"x", "y"}, {1, 1}, {"x^2*y - y*x^2", "x*y^2 - y^2*x"}, f);
}

// Dense rank by plain Gaussian elimination; independent of the sparse echelon code.
template <class K>
std::size_t dense_rank(std::vector<std::vector<K>> m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      K f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace testing_helpers
