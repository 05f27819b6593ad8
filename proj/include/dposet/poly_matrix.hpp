#pragma once

#include "dposet/int_linalg.hpp"
#include "dposet/poly.hpp"

#include <string>
#include <variant>
#include <vector>

namespace dposet {

/// Px * M * Qx == Dx over Z[x] with unit-determinant transforms.
struct PolySNFCertificate {
  PolyMatrix P;
  PolyMatrix D;
  PolyMatrix Q;
  std::vector<IntPoly> diag;
};

struct CompanionBlock {
  IntPoly poly;
  IntMatrix matrix;
};

/// Standard companion matrix: ones on the sub-diagonal, last column holds
/// the negated low coefficients.
CompanionBlock companion(const IntPoly& a);

/// Block-diagonal matrix of companions, in the given order.
IntMatrix block_companion(const std::vector<IntPoly>& polys);

/// sign*x*I + c*I - A.
PolyMatrix x_plus_shift_matrix(const IntMatrix& a, const Integer& c, int sign);

PolyMatrix to_poly_matrix(const IntMatrix& a);
IntMatrix evaluate(const PolyMatrix& m, const Integer& t);
/// Substitutes x -> x + c in every entry.
PolyMatrix shift_variable(const PolyMatrix& m, const Integer& c);
PolyMatrix negate_variable(const PolyMatrix& m);
int max_degree(const PolyMatrix& m);

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix multiply(const PolyMatrix& a, const IntMatrix& b);
PolyMatrix multiply(const IntMatrix& a, const PolyMatrix& b);

/// Exact determinant over Z[x]. Uses the characteristic polynomial when the
/// matrix has the shape s*x*I + C, and fraction-free elimination otherwise.
IntPoly poly_det(const PolyMatrix& m);

/// Constant 1 for units, positive leading coefficient otherwise. Returns the
/// sign that was divided out.
int normalization_sign(const IntPoly& p);

struct ReductionFailure {
  std::string reason;
  PolyMatrix state;  // working matrix at the point the heuristic stopped
  int iterations = 0;
};

struct ReductionOptions {
  /// Outer pivot-search rounds before giving up; 0 means 10 * dim^2.
  int max_iterations = 0;
};

using PolySNFResult = std::variant<PolySNFCertificate, ReductionFailure>;

/// Greedy Smith reduction over Z[x]. Success is always certified; failure
/// says nothing about whether a Smith form exists.
PolySNFResult reduce_to_snf_zx(const PolyMatrix& m, ReductionOptions options = {});

bool verify_poly_snf(const PolySNFCertificate& cert, const PolyMatrix& m);

/// Certificate for xI - diag(C_{a_1}, ..., C_{a_k}) with diagonal
/// (1, ..., 1, a_1, ..., a_k). Requires a_1 | a_2 | ... | a_k, all monic.
PolySNFCertificate block_companion_snf(const std::vector<CompanionBlock>& blocks);
PolySNFCertificate block_companion_snf(const std::vector<IntPoly>& polys);

/// Given a certificate for xI - A, produces one for A + xI by x -> -x and
/// sign normalization of the diagonal.
PolySNFCertificate to_plus_convention(const PolySNFCertificate& cert);

}  // namespace dposet
