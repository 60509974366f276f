#pragma once

#include <doctest.h>

#include "bstone/algebra.hpp"

namespace testing {

inline double dist(const bstone::BlockElement& a, const bstone::BlockElement& b) {
  return (a - b).frobenius_norm();
}

inline bstone::BlockElement m2(std::initializer_list<std::initializer_list<bstone::Complex>> rows) {
  bstone::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return bstone::BlockElement(bstone::AlgebraShape{static_cast<int>(rows.size())}, {m});
}

inline bstone::BlockElement e(const bstone::AlgebraShape& s, int row, int col, std::size_t block = 0) {
  return bstone::BlockElement::unit(s, block, row, col);
}

}  // namespace testing
