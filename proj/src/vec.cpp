#include "exadam/vec.hpp"

#include <cmath>
#include <string>

#include "exadam/errors.hpp"

namespace exadam {

void require_same_length(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw LengthMismatch(std::string(what) + ": length mismatch (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

bool all_finite(const Vec& a) {
  for (double x : a) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void require_finite(const Vec& a, const char* what) {
  if (!all_finite(a)) {
    throw NonFinite(std::string(what) + ": non-finite element");
  }
}

Vec elementwise(ElementwiseOp op, const Vec& a, const Vec& b) {
  require_same_length(a, b, "elementwise");
  Vec out(a.size());
  switch (op) {
    case ElementwiseOp::add:
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
      break;
    case ElementwiseOp::sub:
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
      break;
    case ElementwiseOp::mul:
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
      break;
    case ElementwiseOp::div:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] == 0.0) {
          throw DivisionByZero("elementwise div: zero divisor at index " + std::to_string(i));
        }
        out[i] = a[i] / b[i];
      }
      break;
  }
  require_finite(out, "elementwise result");
  return out;
}

Vec add(const Vec& a, const Vec& b) { return elementwise(ElementwiseOp::add, a, b); }
Vec sub(const Vec& a, const Vec& b) { return elementwise(ElementwiseOp::sub, a, b); }
Vec mul(const Vec& a, const Vec& b) { return elementwise(ElementwiseOp::mul, a, b); }
Vec div(const Vec& a, const Vec& b) { return elementwise(ElementwiseOp::div, a, b); }

double dot(const Vec& a, const Vec& b) {
  require_same_length(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

double max_abs_diff(const Vec& a, const Vec& b) {
  require_same_length(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace exadam
