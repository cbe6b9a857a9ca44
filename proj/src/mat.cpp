#include "exadam/mat.hpp"

#include "exadam/errors.hpp"

namespace exadam {

Vec matvec(const Mat& a, const Vec& x) {
  if (a.cols != x.size()) throw LengthMismatch("matvec: dimension mismatch");
  Vec y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw LengthMismatch("matmul: dimension mismatch");
  Mat c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows != b.rows) throw LengthMismatch("matmul_tn: dimension mismatch");
  Mat c(a.cols, b.cols);
  for (std::size_t k = 0; k < a.rows; ++k) {
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double aki = a.at(k, i);
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aki * b.at(k, j);
    }
  }
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  if (a.cols != b.cols) throw LengthMismatch("matmul_nt: dimension mismatch");
  Mat c(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(j, k);
      c.at(i, j) = s;
    }
  }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

}  // namespace exadam
