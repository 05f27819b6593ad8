#pragma once

#include "dposet/integer.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dposet {

/// Dense univariate polynomial over Z, coefficients lowest degree first.
/// Canonical form: no trailing zero coefficient; the zero polynomial has no
/// coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(long c);  // NOLINT: constants convert implicitly, as in Eigen scalars
  IntPoly(const Integer& c);  // NOLINT
  explicit IntPoly(std::vector<Integer> coeffs);

  static IntPoly x();
  /// x - root
  static IntPoly linear_root(const Integer& root);
  static IntPoly monomial(const Integer& c, int degree);
  static IntPoly from_roots(const std::vector<std::pair<Integer, int>>& roots);
  static IntPoly from_values(const std::vector<long>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_unit() const;
  bool is_monic() const;
  Integer coeff(int k) const;
  const Integer& leading() const;
  Integer constant_term() const { return coeff(0); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  Integer operator()(const Integer& t) const;
  /// p(x + c)
  IntPoly shifted(const Integer& c) const;
  /// p(-x)
  IntPoly negated_variable() const;
  /// Content-free with positive leading coefficient; zero stays zero.
  IntPoly primitive() const;
  Integer content() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) {
    return !(a == b);
  }

  std::string str() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

struct PolyDivision {
  IntPoly quotient;
  IntPoly remainder;
};

/// Long division by a monic divisor; always exact over Z.
PolyDivision divmod_monic(const IntPoly& a, const IntPoly& b);
/// a / b when b divides a in Z[x]; nullopt otherwise. b must be nonzero.
std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& d, const IntPoly& a);

/// Solves u*a + v*b = g with g = gcd(a, b) normalized (positive leading
/// coefficient) when such integral u, v exist and one of a/g, b/g is monic
/// up to sign. Returns nullopt when no integral Bezout pair is found.
struct PolyBezout {
  IntPoly g;
  IntPoly u;
  IntPoly v;
};
std::optional<PolyBezout> integral_bezout(const IntPoly& a, const IntPoly& b);

/// Integer roots with multiplicity of a nonzero polynomial, ascending. Only
/// |root| <= bound is searched; without a bound the Cauchy bound is used.
std::vector<std::pair<Integer, int>> integer_roots(
    const IntPoly& p, std::optional<Integer> bound = std::nullopt);

}  // namespace dposet

namespace Eigen {
template <>
struct NumTraits<dposet::IntPoly> : GenericNumTraits<dposet::IntPoly> {
  using Real = dposet::IntPoly;
  using NonInteger = dposet::IntPoly;
  using Literal = dposet::IntPoly;
  using Nested = dposet::IntPoly;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace dposet {
using PolyMatrix = Matrix<IntPoly>;
}  // namespace dposet
