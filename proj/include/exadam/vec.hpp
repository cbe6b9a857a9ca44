#pragma once

#include <cstddef>
#include <vector>

namespace exadam {

// Flat 64-bit float buffer; the parameter, gradient and moment container
// used throughout. Public kernels keep every element finite or throw.
using Vec = std::vector<double>;

enum class ElementwiseOp { add, sub, mul, div };

// result[i] = op(a[i], b[i]). Throws LengthMismatch on size mismatch,
// DivisionByZero on a zero divisor, NonFinite if any output is NaN/Inf.
Vec elementwise(ElementwiseOp op, const Vec& a, const Vec& b);

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec mul(const Vec& a, const Vec& b);
Vec div(const Vec& a, const Vec& b);

bool all_finite(const Vec& a);

// Throws NonFinite naming `what` if any element is NaN/Inf.
void require_finite(const Vec& a, const char* what);
void require_same_length(const Vec& a, const Vec& b, const char* what);

double dot(const Vec& a, const Vec& b);
double max_abs(const Vec& a);

// max_i |a[i] - b[i]|
double max_abs_diff(const Vec& a, const Vec& b);

}  // namespace exadam
