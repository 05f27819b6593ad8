#pragma once

#include "dposet/integer.hpp"
#include "dposet/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dposet {

/// P * A * Q == D with P, Q unimodular and D diagonal, diag entries
/// non-negative and forming a divisibility chain.
struct SNFCertificate {
  IntMatrix P;
  IntMatrix D;
  IntMatrix Q;
  std::vector<Integer> diag;  // DS(A), length min(rows, cols)
};

struct HermiteForm {
  IntMatrix H;  // U * A, row echelon, positive pivots, reduced above pivots
  IntMatrix U;
  std::vector<Eigen::Index> pivot_cols;  // pivot column of each nonzero row
};

SNFCertificate snf(const IntMatrix& a);
/// Diagonal of the Smith form without accumulating transforms.
std::vector<Integer> ds(const IntMatrix& a);
HermiteForm hnf(const IntMatrix& a);

/// Saturated basis of the integer kernel, one vector per column. The basis
/// is returned in Hermite-reduced form so it is canonical for a given matrix.
IntMatrix kernel_basis(const IntMatrix& a);

/// Reusable integer solver for a fixed left-hand side.
class PreimageSolver {
 public:
  explicit PreimageSolver(const IntMatrix& a);
  /// x with A x = b, or nullopt when no integral solution exists.
  std::optional<IntVector> solve(const IntVector& b) const;
  Eigen::Index rank() const { return rank_; }

 private:
  IntMatrix P_;
  IntMatrix Q_;
  std::vector<Integer> diag_;
  Eigen::Index rank_ = 0;
  Eigen::Index rows_ = 0;
};

std::optional<IntVector> solve_preimage(const IntMatrix& a, const IntVector& b);

Integer det(const IntMatrix& a);
Eigen::Index rank(const IntMatrix& a);
/// Exact characteristic polynomial det(xI - A).
IntPoly char_poly(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws InvalidInput when det != +-1.
IntMatrix inverse_unimodular(const IntMatrix& a);

bool is_surjective_over_Z(const IntMatrix& a);
bool has_free_cokernel(const IntMatrix& a);
/// True iff the vectors (columns of a square matrix) form a Z-basis.
bool is_basis(const IntMatrix& columns);
bool is_basis(const std::vector<IntVector>& vectors);
/// Columns extend to a basis of Z^rows (the spanned lattice is a direct
/// summand).
bool is_saturated(const IntMatrix& columns);

/// LLL reduction (delta = 3/4) of linearly independent columns, exact
/// integer arithmetic. The first `fixed` columns are left untouched and the
/// remaining ones are reduced against them, so the spanned lattice and the
/// prefix are preserved.
IntMatrix lll_reduce(const IntMatrix& columns, Eigen::Index fixed = 0);
/// v minus a nearby lattice vector (size reduction against the columns).
IntVector size_reduce(const IntMatrix& columns, const IntVector& v);

IntMatrix hstack(const std::vector<IntVector>& columns, Eigen::Index rows);

// ---------------------------------------------------------------------------
// Scalar-generic kernels. `Scalar` must be an integral domain with exact
// division available through exact_quotient().

inline Integer exact_quotient(const Integer& a, const Integer& b) { return a / b; }
inline IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw InternalError("exact_quotient: inexact polynomial division");
  return *q;
}

/// Fraction-free Gaussian elimination (Bareiss).
template <typename Scalar>
Scalar bareiss_det(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw InvalidInput("det: matrix not square");
  if (n == 0) return Scalar(1);
  Scalar sgn(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != Scalar(0)) {
          swap = i;
          break;
        }
      if (swap < 0) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sgn * m(n - 1, n - 1);
}

/// Division-free characteristic polynomial (Berkowitz). O(n^4); kept as an
/// independent route for small matrices.
IntPoly char_poly_berkowitz(const IntMatrix& a);

}  // namespace dposet
