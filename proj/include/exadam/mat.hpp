#pragma once

#include <cstddef>

#include "exadam/vec.hpp"

namespace exadam {

// Dense row-major matrix; just enough for the quadratic and MLP problems.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// y = A x
Vec matvec(const Mat& a, const Vec& x);

// C = A B
Mat matmul(const Mat& a, const Mat& b);

// C = A^T B
Mat matmul_tn(const Mat& a, const Mat& b);

// C = A B^T
Mat matmul_nt(const Mat& a, const Mat& b);

Mat transpose(const Mat& a);

}  // namespace exadam
