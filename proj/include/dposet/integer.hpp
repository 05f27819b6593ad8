#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dposet {

/// Arbitrary-precision integer. Expression templates are disabled so the type
/// behaves as a plain value inside Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

/// Raised when an operation is handed input that violates its contract,
/// such as a shape mismatch or a malformed encoding.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails. Seeing one means a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ExtendedGcd {
  Integer g;  // non-negative
  Integer s;
  Integer t;  // s*a + t*b == g
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer abs(const Integer& a);
int sign(const Integer& a);

/// Floor division and the matching non-negative remainder for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
/// Quotient rounded to nearest (ties toward zero) so |a - q*b| <= |b|/2.
Integer round_div(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

Integer parse_integer(const std::string& text);
std::string to_string(const Integer& a);

IntMatrix identity(Eigen::Index n);
IntMatrix zeros(Eigen::Index rows, Eigen::Index cols);
IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
IntVector from_values(const std::vector<long>& values);

template <typename Scalar>
bool equal(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <typename Scalar>
bool equal(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

bool is_zero(const IntMatrix& a);
bool is_zero(const IntVector& a);

/// Plain triple-loop product that skips zero entries of the left factor.
/// Faster than the generic kernel for the sparse 0/1 operator matrices.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& v);

/// Infinity norm (max absolute row sum); bounds the spectral radius.
Integer infinity_norm(const IntMatrix& a);

}  // namespace dposet
